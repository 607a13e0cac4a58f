"""2-isogeny descent: quartic searches, certificates and closed-form witnesses."""

from ..homomorphisms import QuarticWitness
from .certificate import (
    CertificateError,
    DescentCertificate,
    Seed,
    build_certificate,
    certificate_seeds,
    point_seeds,
    rank_lower_bound,
    seed_from_point,
    transport_seeds,
    validate_certificate,
)
from .constructive import CascadeState, cascade_u4v4, certificate_for_uv, uv_table_seeds
from .quartic import (
    ExhaustedToHeight,
    LocallyExcluded,
    QuarticProblem,
    Side,
    Solved,
    enumerate_b1,
    local_obstruction,
    solve_quartic,
    subgroup_closure,
)

__all__ = [
    "CascadeState",
    "CertificateError",
    "DescentCertificate",
    "ExhaustedToHeight",
    "LocallyExcluded",
    "QuarticProblem",
    "QuarticWitness",
    "Seed",
    "Side",
    "Solved",
    "build_certificate",
    "cascade_u4v4",
    "certificate_for_uv",
    "certificate_seeds",
    "enumerate_b1",
    "local_obstruction",
    "point_seeds",
    "uv_table_seeds",
    "rank_lower_bound",
    "seed_from_point",
    "solve_quartic",
    "subgroup_closure",
    "transport_seeds",
    "validate_certificate",
]
