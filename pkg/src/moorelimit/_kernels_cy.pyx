# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel; behavioral twin of ``_kernels_py``.

Same contract as the pure-Python module: enumerate every transition table
over exactly ``n_states`` states (initial state 0), keep the tables whose
trace-visited states can emit the recorded outputs, and collect the canonical
encodings of the minimized survivors.  The odometer walk, trace simulation and
partition refinement all run on C arrays; only the per-survivor encoding
touches Python objects.
"""

from libc.stdlib cimport calloc, free


cdef int _minimize_canonical(int n, int ni, int* delta, int* lam,
                             int* block, int* newb, int* rep, int* order,
                             int* renum, int* qdelta, int* qlam,
                             int* sigval, int* sigstamp, int* stamp) :
    """Fill qdelta/qlam with the canonical minimized table; return its size."""
    cdef int s, i, b, key, nxt, n_blocks, head, tail, base
    cdef long sig

    # round 0: partition by output symbol
    stamp[0] += 1
    nxt = 0
    for s in range(n):
        key = lam[s]
        if sigstamp[key] != stamp[0]:
            sigstamp[key] = stamp[0]
            sigval[key] = nxt
            nxt += 1
        block[s] = sigval[key]
    n_blocks = nxt

    # refine by one-step successor blocks until stable
    while True:
        stamp[0] += 1
        nxt = 0
        for s in range(n):
            sig = block[s]
            base = s * ni
            for i in range(ni):
                sig = sig * (n + 1) + block[delta[base + i]]
            if sigstamp[sig] != stamp[0]:
                sigstamp[sig] = stamp[0]
                sigval[sig] = nxt
                nxt += 1
            newb[s] = sigval[sig]
        for s in range(n):
            block[s] = newb[s]
        if nxt == n_blocks:
            break
        n_blocks = nxt

    for b in range(n_blocks):
        rep[b] = -1
    for s in range(n):
        if rep[block[s]] < 0:
            rep[block[s]] = s

    # breadth-first renumber from the initial state's block, dropping unreachable blocks
    for b in range(n_blocks):
        renum[b] = -1
    renum[block[0]] = 0
    order[0] = block[0]
    head = 0
    tail = 1
    while head < tail:
        base = rep[order[head]] * ni
        head += 1
        for i in range(ni):
            b = block[delta[base + i]]
            if renum[b] < 0:
                renum[b] = tail
                order[tail] = b
                tail += 1

    for s in range(tail):
        base = rep[order[s]] * ni
        for i in range(ni):
            qdelta[s * ni + i] = renum[block[delta[base + i]]]
        qlam[s] = lam[rep[order[s]]]
    return tail


def consistent_machine_encodings(int n_states, int n_inputs, int n_outputs,
                                 trace_inputs, trace_outputs):
    """Encodings of all distinct behaviors with <= n_states states matching the trace."""
    cdef int n = n_states
    cdef int ni = n_inputs
    cdef int no = n_outputs
    cdef int tlen = len(trace_outputs)
    cdef int digits = n * ni
    cdef int i, j, s, pos, req, ok, nfree, m, stamp_base
    cdef long sig_space

    if n < 1 or ni < 1 or no < 1:
        raise ValueError("state and alphabet sizes must be >= 1")
    if tlen != len(trace_inputs) + 1:
        raise ValueError("trace must have exactly one more output than inputs")

    sig_space = no
    cdef long p = 1
    for i in range(ni + 1):
        p *= n + 1
        if p > (1 << 26):
            raise ValueError("enumeration instance too large for the signature table")
    if p > sig_space:
        sig_space = p

    cdef int* t_in = <int*> calloc(tlen if tlen > 1 else 1, sizeof(int))
    cdef int* t_out = <int*> calloc(tlen, sizeof(int))
    cdef int* delta = <int*> calloc(digits, sizeof(int))
    cdef int* forced = <int*> calloc(n, sizeof(int))
    cdef int* lam = <int*> calloc(n, sizeof(int))
    cdef int* free_idx = <int*> calloc(n, sizeof(int))
    cdef int* comp = <int*> calloc(n, sizeof(int))
    cdef int* block = <int*> calloc(n, sizeof(int))
    cdef int* newb = <int*> calloc(n, sizeof(int))
    cdef int* rep = <int*> calloc(n, sizeof(int))
    cdef int* order = <int*> calloc(n, sizeof(int))
    cdef int* renum = <int*> calloc(n, sizeof(int))
    cdef int* qdelta = <int*> calloc(digits, sizeof(int))
    cdef int* qlam = <int*> calloc(n, sizeof(int))
    cdef int* sigval = <int*> calloc(sig_space, sizeof(int))
    cdef int* sigstamp = <int*> calloc(sig_space, sizeof(int))
    cdef int stamp = 0

    if (t_in == NULL or t_out == NULL or delta == NULL or forced == NULL or
            lam == NULL or free_idx == NULL or comp == NULL or block == NULL or
            newb == NULL or rep == NULL or order == NULL or renum == NULL or
            qdelta == NULL or qlam == NULL or sigval == NULL or sigstamp == NULL):
        raise MemoryError

    found = set()
    try:
        for j in range(tlen - 1):
            t_in[j] = trace_inputs[j]
        for j in range(tlen):
            t_out[j] = trace_outputs[j]

        while True:
            # simulate the trace on this transition table, forcing visited outputs
            for s in range(n):
                forced[s] = -1
            forced[0] = t_out[0]
            ok = 1
            s = 0
            for j in range(tlen - 1):
                s = delta[s * ni + t_in[j]]
                req = t_out[j + 1]
                if forced[s] < 0:
                    forced[s] = req
                elif forced[s] != req:
                    ok = 0
                    break
            if ok:
                nfree = 0
                for s in range(n):
                    lam[s] = forced[s]
                    if forced[s] < 0:
                        free_idx[nfree] = s
                        nfree += 1
                for j in range(nfree):
                    comp[j] = 0
                while True:
                    for j in range(nfree):
                        lam[free_idx[j]] = comp[j]
                    m = _minimize_canonical(n, ni, delta, lam, block, newb, rep,
                                            order, renum, qdelta, qlam,
                                            sigval, sigstamp, &stamp)
                    enc = [m]
                    for j in range(m * ni):
                        enc.append(qdelta[j])
                    for j in range(m):
                        enc.append(qlam[j])
                    found.add(tuple(enc))
                    j = nfree - 1
                    while j >= 0 and comp[j] == no - 1:
                        comp[j] = 0
                        j -= 1
                    if j < 0:
                        break
                    comp[j] += 1
            pos = digits - 1
            while pos >= 0 and delta[pos] == n - 1:
                delta[pos] = 0
                pos -= 1
            if pos < 0:
                break
            delta[pos] += 1
    finally:
        free(t_in); free(t_out); free(delta); free(forced); free(lam)
        free(free_idx); free(comp); free(block); free(newb); free(rep)
        free(order); free(renum); free(qdelta); free(qlam)
        free(sigval); free(sigstamp)
    return found
