"""Label-preserving bisimilarity check by partition refinement.

Works on the union of two graphs: blocks start split by node kind and
refine on transition signatures until stable; the graphs' roots must
then share a block. Probabilistic edges compare by total probability
into each block (rounded, so differently-merged but equal distributions
match); other edges compare by exact label and target block.
"""

from __future__ import annotations

from rosa_lts import Lts, Prob

PROB_DECIMALS = 9


def _union(a: Lts, b: Lts):
    offset = len(a.nodes)
    kinds = [n.kind for n in a.nodes] + [n.kind for n in b.nodes]
    succ: list[list] = [[] for _ in kinds]
    for e in a.edges:
        succ[e.source].append((e.label, e.target))
    for e in b.edges:
        succ[e.source + offset].append((e.label, e.target + offset))
    return kinds, succ, a.root, b.root + offset


def _signature(edges, block_of):
    plain = set()
    mass: dict[int, float] = {}
    for label, target in edges:
        if isinstance(label, Prob):
            block = block_of[target]
            mass[block] = mass.get(block, 0.0) + label.p
        else:
            plain.add((label, block_of[target]))
    prob = frozenset(
        (block, round(total, PROB_DECIMALS)) for block, total in mass.items()
    )
    return frozenset(plain), prob


def bisimilar(a: Lts, b: Lts) -> bool:
    kinds, succ, root_a, root_b = _union(a, b)
    n = len(kinds)
    # initial partition: one block per node kind
    blocks: dict = {}
    for i in range(n):
        blocks.setdefault(kinds[i], len(blocks))
    block_ids = [blocks[kinds[i]] for i in range(n)]
    while True:
        table: dict = {}
        next_ids = [0] * n
        for i in range(n):
            key = (block_ids[i], _signature(succ[i], block_ids))
            next_ids[i] = table.setdefault(key, len(table))
        if len(table) == len(set(block_ids)):
            return next_ids[root_a] == next_ids[root_b]
        block_ids = next_ids
