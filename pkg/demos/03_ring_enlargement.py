"""Grow a patch of the polygon tiling of D(n,n,n) ring by ring and count
the tiles each ring adds against N(n-1) - sum(i_k).

Run with:  python3 demos/03_ring_enlargement.py
"""

# %% rings around the basic polygon for n = 3 (hexagons) and n = 4 (octagons)
from vondyck.presentation import format_word
from vondyck.tiling import enumerate_dnnn, expected_added, ring_boundary

for n, rings in [(3, 3), (4, 2)]:
    patches = []
    rows = enumerate_dnnn(n, rings, patches)
    print(f"n = {n}: {len(rows)} elements listed in {rings} rings")
    for r, (q, nxt) in enumerate(zip(patches, patches[1:]), start=1):
        bd = ring_boundary(q)
        added = len(nxt.tiles) - len(q.tiles)
        print(f"  ring {r}: boundary N = {bd.N}, sum(i_k) = {sum(bd.counts)}, "
              f"N(n-1) - sum(i_k) = {expected_added(bd, n)}, tiles added = {added}")

# %% the first few listed elements for n = 4
for row in enumerate_dnnn(4, 1)[:12]:
    print(row.index, row.ring, format_word(row.word))
