"""Brute-force reference computations.

Nothing here imports the optimized modules: palettes are rebuilt as explicit
sets and conflicts are found by scanning neighborhoods, so a bug in the
index maps cannot hide behind the same bug here.
"""

from collections import defaultdict


def _adjacency(edges):
    adj = defaultdict(list)
    for e in edges:
        u, v = e
        adj[u].append(e)
        adj[v].append(e)
    return adj


def verify_proper(coloring, edges=None):
    """Pairs of adjacent edges sharing a color.

    ``edges`` defaults to the keys of ``coloring``; edges missing a color
    count as violations paired with themselves.
    """
    edges = list(coloring) if edges is None else list(edges)
    get = coloring.get
    slots = [(x, get(e)) for e in edges for x in e]
    if None not in {c for _, c in slots} and len(set(slots)) == len(slots):
        return []
    bad = [(e, e) for e in edges if get(e) is None]
    seen = {}
    for e in sorted(edges):
        c = get(e)
        if c is None:
            continue
        for x in e:
            other = seen.get((x, c))
            if other is not None:
                bad.append((other, e))
            else:
                seen[(x, c)] = e
    return bad


def reference_nibble(edges, randomness, T):
    """Run the round-by-round tentative coloring literally.

    ``randomness[e] = (round, sequence)``.  Returns ``(colors, indices,
    failed)`` where uncolored edges have color 0 and index 0.
    """
    edges = list(edges)
    colors = {e: 0 for e in edges}
    index = {e: 0 for e in edges}
    failed = set()
    adj = _adjacency(edges)
    # colors taken at each node by edges of finished rounds
    used = defaultdict(set)
    by_round = defaultdict(list)
    for e in edges:
        by_round[randomness[e][0]].append(e)

    for i in range(1, T + 1):
        selected = by_round.get(i, [])
        for e in selected:
            u, v = e
            blocked = used[u] | used[v]
            seq = randomness[e][1]
            for pos in range(1, len(seq) + 1):
                if seq[pos - 1] not in blocked:
                    index[e] = pos
                    colors[e] = seq[pos - 1]
                    break
        in_round = set(selected)
        for e in selected:
            if colors[e] == 0:
                failed.add(e)
                continue
            for f in adj[e[0]] + adj[e[1]]:
                if f != e and f in in_round and colors[f] == colors[e]:
                    failed.add(e)
                    break
        for e in selected:
            if colors[e]:
                used[e[0]].add(colors[e])
                used[e[1]].add(colors[e])
    for e in by_round.get(T + 1, []):
        failed.add(e)
    return colors, index, failed


def brute_force_failed_set(colors, rounds, edges=None):
    """Edges uncolored or sharing a color with a same-round neighbor."""
    if edges is None:
        edges = list(colors)
    adj = _adjacency(edges)
    out = set()
    for e in edges:
        c = colors[e]
        if c == 0:
            out.add(e)
            continue
        for f in adj[e[0]] + adj[e[1]]:
            if f != e and rounds[f] == rounds[e] and colors[f] == c:
                out.add(e)
                break
    return out


def recourse_diff(before, after):
    """Number of edges whose color differs; absent edges count as uncolored."""
    keys = set(before) | set(after)
    return sum(1 for e in keys if before.get(e) != after.get(e))
