# %% [markdown]
# Rule tables, numbering and families
#
# A rule table lists the output for each neighbourhood 000, 001, ..., 111.
# The printed string read as binary is the ascending number; Wolfram's
# number reads the same bits the other way round.

# %%
from metaca.rules import Convention, RuleTable, classify, complement, family_members, mirror, to_number

r = RuleTable.from_string("01010100")
print(r, "ascending", to_number(r, Convention.ASCENDING), "wolfram", to_number(r, Convention.WOLFRAM))

# %% Mirror and complement generate the equivalence family of a rule.
from metaca.rules import from_number

r110 = from_number(110, Convention.WOLFRAM)
print("mirror of 110:", to_number(mirror(r110), Convention.WOLFRAM))
print("complement of 110:", to_number(complement(r110), Convention.WOLFRAM))
print("family:", sorted(to_number(m, Convention.WOLFRAM) for m in family_members(r110)))
print("classified as", classify(r110).name)

# %% How many of the 256 rules fall into each highlighted family?
from collections import Counter

print(Counter(classify(from_number(n)).name for n in range(256)))
