"""Exact ADE root-system data, vertex-operator coefficients and Hirota equations."""

from .coefficients import CoeffTable, closed_form_reference, coeff_ratio, coeff_table, dedekind_check
from .cyclo import CycloNum, cyclo_arith, cyclo_galois, cyclotomic_poly, embed_complex
from .hirota import DiffPoly, HirotaSystem, HVar, TauSeries, apply, generate, kw_kernel, to_q_variables
from .roots import AdeType, RootSystem, WeylWord, build_root_system, coxeter_element, coxeter_orbits, reflect, weyl_word
from .spectral import CoxeterData, compute_kappa, coxeter_data, exponents, spectral_projector

__version__ = "0.1.0"

__all__ = [
    "AdeType", "CoeffTable", "CoxeterData", "CycloNum", "DiffPoly", "HVar", "HirotaSystem",
    "RootSystem", "TauSeries", "WeylWord", "apply", "build_root_system", "closed_form_reference",
    "coeff_ratio", "coeff_table", "compute_kappa", "coxeter_data", "coxeter_element",
    "coxeter_orbits", "cyclo_arith", "cyclo_galois", "cyclotomic_poly", "dedekind_check",
    "embed_complex", "exponents", "generate", "kw_kernel", "reflect", "spectral_projector",
    "to_q_variables", "weyl_word",
]
