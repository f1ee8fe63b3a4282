# %% [markdown]
# Weighted cells with blended genotypes
#
# Cells carry a weight; the stimulus is the summed weight of live
# neighbours.  After each update a live cell replaces its genotype by the
# union of its own and its neighbours' genotypes, which only ever widens
# the survival window.

# %%
from pathlib import Path

from metaca import render
from metaca.geno2d import BlendKind, BlendStrategy2D, Genotype2D
from metaca.rng import Xoshiro256StarStar
from metaca.sim2d import iterate2d, random_grid

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

# %%
for kind in BlendKind:
    grid = random_grid(96, 96, Xoshiro256StarStar(7), density=0.5,
                       genotype=Genotype2D(200, 400, 800), jitter=50)
    pops = []
    for g in iterate2d(grid, 300, BlendStrategy2D(kind)):
        pops.append(g.population)
    print(f"{kind.value:>12}: population {pops[0]} -> {pops[100]} -> {pops[-1]}")
    render.write_ppm(out / render.frame_name(kind.value, "weight", 300), render.render_2d(g))
