# %% [markdown]
# A row of evolving rules
#
# Each cell stores a rule (genotype) and a bit (phenotype).  Every
# generation the bit is updated by the cell's rule and the rule by the
# meta-rule.  Multiplication locks into stable bands quickly; blending
# takes a little longer.

# %%
from pathlib import Path

from metaca import analysis, render
from metaca.sim1d import MetaKind, MetaRule1D, run

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

# %%
for kind in (MetaKind.MULTIPLY, MetaKind.BLEND):
    h = run(256, 300, MetaRule1D(kind), seed=1)
    g = analysis.stabilization_generation(h.genotypes, 0.95, 10)
    last = analysis.metrics(h, 300)
    print(f"{kind.value:>8}: stable from generation {g}, final entropy {last.genotype_entropy:.2f} bits")
    image = render.render_1d(h, render.Palette(render.PaletteKind.GREYSCALE), "stacked")
    render.write_ppm(out / render.frame_name(kind.value, "stacked", 300), image)

# %% Per-generation metrics go to CSV.
h = run(128, 50, MetaRule1D(MetaKind.BLEND), seed=2)
rows = [analysis.metrics(h, g, 10) for g in range(51)]
(out / "blend_metrics.csv").write_text(analysis.write_csv(rows))
print("wrote", out / "blend_metrics.csv")
