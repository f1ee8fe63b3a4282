# %% [markdown]
# Mutation
#
# Uniform mutation flips each allele independently.  A mutation that can
# only flip the first allele, started from the all-zero rule under
# blending, never leaves the pair {rule 0, rule 128}.

# %%
import numpy as np

from metaca.sim1d import Lattice1D, MetaKind, MetaRule1D, MutationMode, MutationSpec, run

blend = MetaRule1D(MetaKind.BLEND)
zero = Lattice1D.from_rules([0] * 64)
h = run(64, 2000, blend, MutationSpec(MutationMode.FIRST_BIT, 0.05), seed=3, initial=zero)
print("rules visited:", np.unique(h.genotypes).tolist())
print("share of cells at rule 128 in the last generation:", float(np.mean(h.genotypes[-1] == 128)))

# %% With uniform mutation the rule population keeps churning.
from metaca.analysis import genotype_entropy

for name in ("low", "high"):
    h = run(256, 300, blend, MutationSpec.preset(MutationMode.UNIFORM, name), seed=3)
    print(f"{name:>4} rate: final entropy {genotype_entropy(h.genotypes[-1]):.2f} bits")
