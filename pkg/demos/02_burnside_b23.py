"""B(2,3): the free Burnside group of rank 2 and exponent 3, order 27.

Elements are triples (a, b, c) standing for x^a y^b [x,y]^c.
Run with:  python3 demos/02_burnside_b23.py
"""

# %% multiplication in normal form
from vondyck import b23_multiply, build_coset_geometry, enumerate_elements, make_model
from vondyck.cayley import build_cayley, cycle_structure
from vondyck.verify import duality_checks, prepare

x, y = (1, 0, 0), (0, 1, 0)
print("x y =", b23_multiply(x, y), " y x =", b23_multiply(y, x))

# %% 27 elements, 9 H-cosets, 9 K-cosets, 27 edges
store = enumerate_elements(make_model("b23"))
geo = build_coset_geometry(store)
print(len(store), "elements;", len(geo.h_vertices), "H-cosets;", len(geo.k_vertices),
      "K-cosets;", len(geo.edges), "edges")

# %% every element has order 3, so x y cycles in the Cayley graph have length 3
print("xy cycle lengths:", cycle_structure(build_cayley(store), "xy"))

# %% the full list of duality checks
for rep in duality_checks(prepare("b23")):
    print(rep)
