"""Kloosterman sums, affine-subspace double sums and additive energy over F_{p^n}."""

import json as _json

from ._core import (  # noqa: F401
    Field,
    __version__,
    additive_energy,
    additive_energy_oracle,
    critical_set,
    double_sum_affine,
    double_sum_direct,
    energy_bound_rhs,
    energy_report,
    inverse_set,
    kloosterman,
    make_field,
    orthogonal_complement,
    psi_exponent,
    run_verify,
    span_basis,
    subspace_members,
    sumset_2S,
    sumset_growth_rhs,
    thm1_nontrivial,
    thm1_rhs,
    thm2_nontrivial,
    thm2_rhs,
    trivial_bound,
    weighted_sum,
    weil_scan,
)


def verify(check="all", **kwargs):
    """Run a verification sweep and return (report_dict, violation_count)."""
    text, violations = run_verify(check, **kwargs)
    return _json.loads(text), violations
