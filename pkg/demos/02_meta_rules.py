# %% [markdown]
# Meta-rules: combining three neighbouring rule tables
#
# Multiplication feeds each allele triple through the local rule.  Blending
# keeps the alleles on which the outer neighbours agree and uses local
# logic only where they disagree.

# %%
from metaca.blend1d import (
    blend, censored_template, complete, generic_space, multiply, self_rule, template_blend, weaken,
)
from metaca.rules import Convention, RuleTable, to_number

left, local, right = (RuleTable.from_string(s) for s in ("01101110", "01010100", "01010101"))
print("multiply:", multiply(left, local, right))
print("blend:   ", blend(left, local, right))

# %% The blend as an explicit pipeline: common ground, weakened input, completion.
generic = generic_space(left, right)
conflicts = set(range(8)) - generic.defined
weakened = weaken(left, conflicts)
print("generic space:", generic, "conflicts at", sorted(conflicts))
print("weakened left:", weakened)
print("completed:    ", complete(weakened, left, local, right))

# %% The blending principle written as an ordinary rule, using the cell's own value.
s = self_rule()
print(s, "ascending", to_number(s, Convention.ASCENDING), "wolfram", to_number(s, Convention.WOLFRAM))

# %% Templates lock some neighbourhoods and leave the rest ('*') to local logic.
t = censored_template()
print("template", t, "->", template_blend(t, left, local, right))
