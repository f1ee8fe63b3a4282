# %% [markdown]
# A Life variant from a partition genotype
#
# The genotype (3, 3, 5) on the neighbour-count line means: below 3 die,
# exactly 3 come alive, 4 keep the current state, 5 or more die.

# %%

from metaca.geno2d import CONWAY, classify
from metaca.sim2d import StimulusMode, format_pattern, parse_pattern, step

for s in range(9):
    print(s, "dead ->", int(classify(s, CONWAY, False)), " alive ->", int(classify(s, CONWAY, True)))

# %% A 2x2 block is still; a row of three dies out (its centre has only two neighbours).
pattern = """
..........
.ff.......
.ff.......
..........
..........
......fff.
..........
"""
grid = parse_pattern(pattern)
for _ in range(3):
    print(format_pattern(grid))
    grid = step(grid, None, StimulusMode.COUNT)
