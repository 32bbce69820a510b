"""Exact symplectic groups over Z and Z/m: ESD transformations, Steinberg words,
the relative Steinberg group, ESD-type generators and the van der Kallen presentation."""

from .ring import FormIdeal, Ring, RingMismatch, gamma_member, ideal_member, parse_form_ideal, validate_form_ideal
from .space import HVector, form, gamma_defect, split_pm
from .transvections import EsdParams, SpMatrix, apply_esd, elementary_transvection, esd, esd_matrix, gram_check, verify_esd_laws
from .words import AbsGen, AbsWord, ElemColumn, abs_esd_word, eval_abs_word, random_elementary_column, verify_steinberg_relations
from .relative import (
    NotUnipotent,
    RelGen,
    RelWord,
    act,
    eval_rel_word,
    levi_member,
    parabolic_member,
    recognize_unipotent_matrix,
    unipotent_normal_form,
    verify_kl_relations,
)
from .generators import (
    PivotContext,
    PreconditionError,
    abs_x_word,
    rel_gen_from_z,
    y_commutator_word,
    y_extended_word,
    y_word,
    z_full_word,
    z_long_word,
    z_pivot_word,
    z_short_word,
)
from .catalog import resolve_sign_variants, verify_identity_catalog
from .vdk import (
    VdKGen,
    VdKWord,
    pi_map,
    rho_map,
    vdk_act,
    vdk_eval,
    vdk_unipotent_decompose,
    verify_kl_for_vdk,
    verify_round_trips,
    verify_t_relations,
)

__version__ = "0.1.0"
