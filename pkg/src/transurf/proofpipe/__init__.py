"""Exact replay of the constant-curvature elimination for translation surfaces."""
from .ledger import CSV_COLUMNS, Ledger, LedgerEntry, LedgerMismatchError
from .runs import (
    PipelineRun,
    general_pipeline,
    planar_pipeline,
    run_general_case,
    run_planar_case,
    specialization_check,
)
from .stages import (
    DerivedRelation,
    Eliminant,
    PQRTriple,
    TrigForm,
    TrigQuadratic,
    TrigRelation,
    build_pqr_general,
    build_pqr_planar,
    derive_relation,
    eliminant,
    eliminate_trig,
    general_trig_relation,
    planar_trig_relation,
    quadratic_eliminant,
    rationalize,
    square_relation,
    trig_form,
)
