"""Write SVG pictures of the tilings into a directory (default: figures/).

Run with:  python3 demos/04_figures.py [outdir]
"""

# %% build the tilings
import pathlib
import sys

from vondyck.render import (render_cayley, render_coset, render_derived, render_tiling,
                            svg_metadata)
from vondyck.tiling import build_polygon_tiling

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
out.mkdir(parents=True, exist_ok=True)

t333 = build_polygon_tiling((3, 3, 3), 3)   # hexagons; the derived tiling is trihexagonal
t444 = build_polygon_tiling((4, 4, 4), 2)   # octagons in the Poincare disk

# %% render and report the embedded counts
jobs = {
    "tiling_444.svg": render_tiling(t444),
    "coset_444.svg": render_coset(t444),
    "derived_444.svg": render_derived(build_polygon_tiling((4, 4, 4), 1)),
    "derived_333.svg": render_derived(t333),
    "cayley_333.svg": render_cayley(t333),
}
for name, svg in jobs.items():
    (out / name).write_text(svg)
    meta = svg_metadata(svg)
    print(f"{out / name}: {meta['vertices']} vertices, {meta['edges']} edges")
