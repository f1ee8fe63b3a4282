"""MetaCA: cellular automata whose rules evolve locally.

Modules
-------
rules     elementary rule tables, numbering conventions, rule families
blend1d   meta-rules combining neighbouring rule tables
sim1d     the 1D genotype/phenotype engine
geno2d    partition genotypes and their blends
sim2d     the weighted 2D engine
analysis  per-generation metrics and CSV export
render    palettes and PPM output
config    experiment configuration files
cli       the ``metaca`` command
"""
__version__ = "0.1.0"
