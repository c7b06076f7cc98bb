"""Walk through the smallest example: Z6 as a quotient of D(2,3,6).

Run with:  python3 demos/01_z6_duality.py
"""

# %% the group and its store
from vondyck import (build_cayley, build_coset_geometry, enumerate_elements, make_model,
                     reconstruct_cayley)
from vondyck.cosets import b_map, psi
from vondyck.presentation import format_word

store = enumerate_elements(make_model("z6"))
for e in store:
    print(f"id {e.id}: residue {e.payload}, canonical word {format_word(e.word)}")

# %% the Cayley graph: one x-edge and one y-edge out of every element
cay = build_cayley(store)
for s, t, c in cay.sorted_edges():
    print(f"{store[s].payload} -{c.value}-> {store[t].payload}")

# %% the coset geometry: H = <x> cosets are pairs, K = <y> cosets are triples
geo = build_coset_geometry(store)
for c in geo.h_vertices + geo.k_vertices:
    print(c.name, sorted(store[m].payload for m in c.members))
for e in geo.edges:
    print(f"edge {e.h.name} -- {e.k.name} labelled by residue {store[e.label].payload}")

# %% b sends an element to the edge (dH, dK); psi reads off the generator between edges
one = b_map(geo, 0)
x = store.id_of_word(store[1].word)
print("psi(b(1), b(x)) =", format_word(psi(geo, one, b_map(geo, x))))

# %% the Cayley graph comes back out of the coset geometry
rebuilt = reconstruct_cayley(geo)
print("reconstructed graph equals the Cayley graph:", rebuilt.same_graph(cay))
