"""Exact computations in the monoids totnM_{k,r}, their endomorphism-monoid
realization over free higher-dimensional Jonsson-Tarski algebras, and the
anti-isomorphic relation monoid nRel_{k,r}."""
from .shrubbery import Params, Shrubbery, shrubbery
from .tot import TotElement, compose, deferment, depth_of, reduce, tot_eq, tot_eq_flat
from .endo import Endo, endo_compose, endo_eq, phi, psi
from .rel import LabeledGenSet, RelElement, from_pair, rel_mul, render_arrow, render_matrix

__all__ = [
    "Params", "Shrubbery", "shrubbery",
    "TotElement", "compose", "deferment", "depth_of", "reduce", "tot_eq", "tot_eq_flat",
    "Endo", "endo_compose", "endo_eq", "phi", "psi",
    "LabeledGenSet", "RelElement", "from_pair", "rel_mul", "render_arrow", "render_matrix",
]
