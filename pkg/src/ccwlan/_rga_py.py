"""Pure-Python core of the random greedy association scheduler.

Reference implementation of the event loop; the compiled core in _rga_cy.pyx
mirrors it operation-for-operation (including every PRNG draw) and must stay
bit-identical. All times are integers: a helper activated with f occupied
slots runs for n_by_fill[f] codeword slots, and the clock advances by integer
minima of remaining times.

Only this core can emit traces and run the debug invariant checker.
"""

from .rng import Xoshiro256StarStar


def _check_state(trans, inter, h_on, h_off, m, filled, aic, served_by):
    H = len(m)
    K = len(aic)
    L = len(m[0])
    assert sorted(h_on + h_off) == list(range(H)), "h_on/h_off is not a partition"
    for k in range(K):
        expect = sum(1 for h in h_on if inter[h][k])
        assert aic[k] == expect, f"stale interference count for user {k}"
    for h in range(H):
        occupied = [m[h][l] for l in range(L) if m[h][l] >= 0]
        assert len(occupied) == filled[h]
        if occupied:
            assert h in h_on, "inactive helper holds users"
        for l in range(L):
            k = m[h][l]
            if k >= 0:
                assert served_by[k] == h
                assert trans[h][k], "served user out of transmission range"
                for other in h_on:
                    if other != h:
                        assert not inter[other][k], "served user suffers interference"


def run_core(
    trans,
    inter,
    profiles,
    degrees,
    n_by_fill,
    v_limit,
    seed,
    max_iters,
    shuffle_degrees=True,
    trace=None,
    check_invariants=False,
):
    """Run the greedy association loop until every user holds v_limit chunks.

    trans/inter are HxK boolean reach matrices, profiles is 0-based per user,
    n_by_fill[f] is the codeword count for f occupied slots. Returns
    (v, T, iterations, completed, stalled): completed=False with
    stalled=False means the iteration cap was hit.
    """
    H = len(trans)
    K = len(profiles)
    L = len(n_by_fill) - 1
    rng = Xoshiro256StarStar(seed)

    h_off = list(range(H))
    h_on = []
    h_new = []
    m = [[-1] * L for _ in range(H)]
    filled = [0] * H
    t_rem = [0] * H
    v = [0] * K
    aic = [0] * K  # active helpers within r_inter, per user
    served_by = [-1] * K
    d_vec = sorted(int(d) for d in degrees)
    T = 0
    iterations = 0

    def emit(time, event, helper, users, rem, **extra):
        trace.append(
            {
                "time": time,
                "event": event,
                "helper": helper + 1,
                "users": [k + 1 for k in users],
                "t_rem": rem,
                "iter": iterations,
                **extra,
            }
        )

    def assign_to(h, dh, active):
        cand = []
        for k in range(K):
            if degrees[k] != dh or not trans[h][k]:
                continue
            margin = 1 if (active and inter[h][k]) else 0
            if aic[k] - margin == 0:
                cand.append(k)
        rng.shuffle(cand)
        for k in cand:
            l = profiles[k]
            if m[h][l] == -1:
                m[h][l] = k
                filled[h] += 1
                served_by[k] = h
                if trace is not None:
                    emit(T, "assign", h, [k], None)

    def assign_users(dh):
        for h in h_new:
            assign_to(h, dh, active=True)

    def assign_helpers(dh):
        for h in list(h_off):
            if any(served_by[k] >= 0 and inter[h][k] for k in range(K)):
                continue  # would interfere with a user already being served
            assign_to(h, dh, active=False)
            if filled[h] > 0:
                h_off.remove(h)
                h_on.append(h)
                h_new.append(h)
                for k in range(K):
                    if inter[h][k]:
                        aic[k] += 1

    while min(v) < v_limit:
        if iterations >= max_iters:
            return v, T, iterations, False, False
        iterations += 1
        rng.shuffle(h_off)
        if shuffle_degrees:
            rng.shuffle(d_vec)
        for dh in d_vec:
            assign_users(dh)
            assign_helpers(dh)
            if check_invariants:
                _check_state(trans, inter, h_on, h_off, m, filled, aic, served_by)
        for h in h_new:
            t_rem[h] = n_by_fill[filled[h]]
            if trace is not None:
                emit(T, "activate", h, [m[h][l] for l in range(L) if m[h][l] >= 0], t_rem[h])
        h_new.clear()
        if not h_on:
            return v, T, iterations, False, True  # nothing active, nothing activatable
        t_min = min(t_rem[h] for h in h_on)
        finish_time = T + t_min
        for h in list(h_on):
            t_rem[h] -= t_min
            if t_rem[h] == 0:
                h_on.remove(h)
                h_off.append(h)
                for k in range(K):
                    if inter[h][k]:
                        aic[k] -= 1
                done = []
                for l in range(L):
                    k = m[h][l]
                    if k >= 0:
                        v[k] += 1
                        served_by[k] = -1
                        m[h][l] = -1
                        done.append(k)
                        if trace is not None:
                            trace.append(
                                {
                                    "time": finish_time,
                                    "event": "credit",
                                    "helper": h + 1,
                                    "users": [k + 1],
                                    "t_rem": None,
                                    "iter": iterations,
                                    "chunks": v[k],
                                }
                            )
                filled[h] = 0
                if trace is not None:
                    trace.append(
                        {
                            "time": finish_time,
                            "event": "finish",
                            "helper": h + 1,
                            "users": [k + 1 for k in done],
                            "t_rem": 0,
                            "iter": iterations,
                        }
                    )
        if check_invariants:
            _check_state(trans, inter, h_on, h_off, m, filled, aic, served_by)
        T += t_min

    return v, T, iterations, True, False
