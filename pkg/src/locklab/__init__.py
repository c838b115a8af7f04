"""Finite-N Kuramoto locking threshold: exact, asymptotic, and simulated.

Three mutually cross-validating routes to the phase-locking threshold
gamma_L of the Kuramoto model with evenly spaced natural frequencies:

- `locking`: the exact finite-N implicit-equation solver,
- `asymptotics`: the bulk/fringe Hurwitz-zeta expansion and closed-form
  predictions (pi/4 plus N^(-1) and N^(-3/2) corrections),
- `dynamics`: direct RK4 simulation with bifurcation bisection,

backed by `specfun` (Hurwitz zeta, QRS constants) and tied together by
`harness` (sweeps, power-law fits, CSV/JSON output) and the `locklab` CLI.
"""

from .asymptotics import (
    ASYMPTOTIC_S,
    EXACT_S,
    AsymptoticPrediction,
    MeshContext,
    alpha_sum,
    bulk_closed_form,
    bulk_sum,
    fringe_closed_form,
    fringe_dominant,
    fringe_sum,
    mesh_context,
    mesh_points,
    predict_gamma,
    predict_gamma_custom,
    summand_a,
)
from .dynamics import (
    BisectResult,
    SeedPhases,
    SimConfig,
    SimOutcome,
    Verdict,
    initial_phases,
    integrate,
    order_parameter,
    rk4_integrate,
    threshold_bisect,
    vector_field,
)
from .harness import (
    ScalingFit,
    SweepRow,
    emit,
    fit_power_law,
    geometric_ladder,
    prefactor_extract,
    read_rows,
    sweep,
)
from .locking import (
    FrequencySpec,
    LockingSolution,
    Rule,
    lock_margin,
    locking_threshold_exact,
    make_frequencies,
    normalized,
    order_param_at_threshold,
    scale_factor,
    solve_sin_theta_max,
)
from .specfun import (
    QrsConstants,
    ZetaEval,
    hurwitz_zeta,
    hurwitz_zeta_dq,
    hurwitz_zeta_eval,
    in_validated_range,
    psum_asymptotic,
    qrs_c1,
    qrs_c2,
)

__version__ = "0.1.0"
