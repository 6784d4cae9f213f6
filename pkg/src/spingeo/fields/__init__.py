"""Geometry backends, fields, differential operators, residuals, brackets,
symmetry operators, spin raising/lowering, and polynomial solution spaces."""

from .base import (
    CallableFormField,
    CallableSpinorField,
    FormField,
    Poly,
    PolyFormField,
    PolySpinorField,
    SpinorField,
    SpinorValued1Form,
    act_on_spinor_field,
    bilinear_field,
    form_add,
    form_cmul,
    form_contract_gen,
    form_grade,
    form_hodge,
    form_scale,
    form_wedge,
    halton_points,
    homogeneous_degree,
    inner_field,
    sample_points,
    spinor_add,
    spinor_matmul,
    spinor_scale,
)
from .geometry import Geometry, GeometryError, ScalarChart, make_geometry, sphere_sigma
from .calculus import (
    coderivative,
    covd,
    diffop,
    dirac,
    exterior_d,
    gauge_curvature,
    gauged,
    gauged_coderivative,
    gauged_covd,
    gauged_d,
    gauged_dirac,
    gauged_hodge_de_rham,
    gauged_laplace_beltrami,
    hodge_de_rham,
    laplace_beltrami,
    rs_covd,
    rs_dirac,
    spinor_laplacian,
    twistor_op,
)
from .equations import ResidualError, cky_third_report, residual, residual_report
from .brackets import bracket, cky_bracket, clifford_bracket, ky_bracket, sn_bracket
from .symmetry import (
    DegreeGuardError,
    PreconditionError,
    conformal_lie_spinor,
    lie_form,
    lie_spinor,
    symmetry,
    transform,
)
from .solve import (
    SolutionSpace,
    cky_count,
    cky_minus_ky_count,
    ky_count,
    solve_space,
    sphere_killing_spinors,
)

__all__ = [name for name in dir() if not name.startswith("_")]
