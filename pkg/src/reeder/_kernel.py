"""Union-find orbit closure over bit-packed state spaces.

States are the integers 0..2^f-1.  Each move m sends state s to a successor
determined by (mask, const, bit):

  * reeder mode: bit `bit` of s is xored with parity(s & mask) ^ const
    (const carries the pinned neighbors' contribution);
  * sigma mode: if bit `bit` of s is set, s is xored with mask.

The kernel unions every state with all of its successors, always linking
toward the smaller index, so each class root is its minimum member.  A numba
jit is used when available; a pure-numpy label-propagation fallback otherwise.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap if not (args and callable(args[0])) else args[0]


@njit(cache=True)
def _union_find_orbits(n_states, masks, consts, bits, sigma):
    parent = np.arange(n_states, dtype=np.int64)
    n_moves = masks.shape[0]
    for s in range(n_states):
        for m in range(n_moves):
            if sigma:
                if s >> bits[m] & 1:
                    t = s ^ masks[m]
                else:
                    t = s
            else:
                v = s & masks[m]
                v ^= v >> 32
                v ^= v >> 16
                v ^= v >> 8
                v ^= v >> 4
                v ^= v >> 2
                v ^= v >> 1
                t = s ^ (((v ^ consts[m]) & 1) << bits[m])
            if t == s:
                continue
            x = s
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            y = t
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x < y:
                parent[y] = x
            elif y < x:
                parent[x] = y
    # parent[x] <= x throughout, so one ascending pass fully compresses
    for s in range(n_states):
        parent[s] = parent[parent[s]]
    return parent


def _orbits_numpy(n_states: int, masks, consts, bits, sigma: bool):
    states = np.arange(n_states, dtype=np.int64)
    succ = np.empty((len(masks), n_states), dtype=np.int64)
    for m in range(len(masks)):
        if sigma:
            lit = (states >> bits[m]) & 1
            succ[m] = states ^ (lit * masks[m])
        else:
            p = (np.bitwise_count(states & masks[m]) + consts[m]) & 1
            succ[m] = states ^ (p << bits[m])
    label = states.copy()
    while True:
        new = label.copy()
        for m in range(len(masks)):
            np.minimum(new, label[succ[m]], out=new)
        new = new[new]
        if np.array_equal(new, label):
            return label
        label = new


def orbit_roots(n_states: int, masks, consts, bits, sigma: bool = False):
    """Root (minimum member) of each state's orbit, as an int64 array."""
    masks = np.asarray(masks, dtype=np.int64)
    consts = np.asarray(consts, dtype=np.int64)
    bits = np.asarray(bits, dtype=np.int64)
    if len(masks) == 0 or n_states <= 1:
        return np.arange(n_states, dtype=np.int64)
    if HAVE_NUMBA:
        return _union_find_orbits(n_states, masks, consts, bits, sigma)
    return _orbits_numpy(n_states, masks, consts, bits, sigma)
