"""Independent reference implementations used as test oracles."""


def brute_force_detections(b, trace):
    """Per-tick scan that re-evaluates everything from scratch at each tick.

    Tick t belongs to the window opened at the latest tick s <= t where the
    start condition holds, provided every tick in (s, t] is inside the window
    (a later start simply reopens it).  Detections are maximal runs of
    in-window ticks satisfying the predicate and sharing a window, dropping
    runs that revisit a state.
    """
    states = trace.states
    owner = []
    for t in range(len(states)):
        opened = None
        for s in range(t, -1, -1):
            if b.start_condition(states[s]):
                opened = s
                break
        if opened is not None and all(b.window(states[u]) or b.start_condition(states[u])
                                      for u in range(opened + 1, t + 1)):
            owner.append(opened)
        else:
            owner.append(None)
    hits = [owner[t] is not None and b.segment_predicate(states[t]) for t in range(len(states))]
    out = []
    t = 0
    while t < len(states):
        if not hits[t]:
            t += 1
            continue
        a = t
        while t + 1 < len(states) and hits[t + 1] and owner[t + 1] == owner[a]:
            t += 1
        seg = [s.canonical() for s in states[a : t + 1]]
        cyclic = len(set(seg)) < len(seg) and len(set(seg)) > 1
        if not cyclic:
            out.append((a, t))
        t += 1
    return out
