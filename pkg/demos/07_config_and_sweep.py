# %% [markdown]
# Configured runs and sweeps
#
# The same experiments can be described in a `key = value` file and run
# from the command line (`metaca run exp.cfg`, `metaca sweep exp.cfg --seeds 4`).
# Here the same entry points are called directly.

# %%
from pathlib import Path

from metaca.cli import execute, main
from metaca.config import config_hash, parse_config

out = Path(__file__).with_name("out")
cfg_text = "mode = run1d\nwidth = 200\ngenerations = 200\nmeta = multiply\nseed = 42\n"
cfg = parse_config(cfg_text, out=str(out / "single"))
print("config hash", config_hash(cfg)[:16])
execute(cfg)
print(sorted(p.name for p in (out / "single").iterdir()))

# %%
cfg_file = out / "exp.cfg"
cfg_file.write_text(cfg_text)
main(["sweep", str(cfg_file), "--seeds", "4", "--out", str(out / "sweep")])
print((out / "sweep" / "sweep.csv").read_text())
