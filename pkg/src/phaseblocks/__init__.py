"""Recognition, certification, and structured factorization of Hermitian
positive semidefinite matrices whose entries have modulus 0 or 1.

The combinatorial recognizer (:func:`recognize`) decides membership in
O(n^2) and emits either a block-phase :class:`Certificate` or a
:class:`Rejection` with a quadratic-form witness; the numerical oracle
(:func:`psd_oracle`, :func:`psrp_check`) provides the independent ground
truth the recognizer is tested against.
"""

from .certificate import (
    MUTATION_KINDS,
    Certificate,
    CertificateCheck,
    CertificateError,
    MonomialSimilarity,
    canonicalize,
    certificates_equal,
    gathered_form,
    materialize_similarity,
    mutate,
    random_certificate,
    reconstruct,
    verify_certificate,
)
from .core import (
    EntryClass,
    HermitianMatrix,
    NotHermitianError,
    ToleranceConfig,
    classify_entries,
    classify_entry,
    validate_hermitian,
)
from .documents import RunReport, emit, parse_certificate_document
from .factor import (
    FactorizationReport,
    FactorPair,
    cholesky_structured,
    lu_structured,
    phase_erased,
    verify_factorization,
)
from .mmio import (
    MatrixParseError,
    format_matrix,
    parse_matrix,
    read_matrix_file,
    write_matrix_file,
)
from .oracle import (
    OracleVerdict,
    PsrpFailure,
    PsrpReport,
    null_extension_check,
    numerical_rank,
    psd_oracle,
    psrp_check,
    psrp_subset,
)
from .recognize import (
    Rejection,
    RejectionReason,
    SupportGraph,
    build_support_graph,
    quadratic_form,
    recognize,
    recognize_binary,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CertificateCheck",
    "CertificateError",
    "EntryClass",
    "FactorPair",
    "FactorizationReport",
    "HermitianMatrix",
    "MUTATION_KINDS",
    "MatrixParseError",
    "MonomialSimilarity",
    "NotHermitianError",
    "OracleVerdict",
    "PsrpFailure",
    "PsrpReport",
    "Rejection",
    "RejectionReason",
    "RunReport",
    "SupportGraph",
    "ToleranceConfig",
    "build_support_graph",
    "canonicalize",
    "certificates_equal",
    "cholesky_structured",
    "classify_entries",
    "classify_entry",
    "emit",
    "format_matrix",
    "gathered_form",
    "lu_structured",
    "materialize_similarity",
    "mutate",
    "null_extension_check",
    "numerical_rank",
    "parse_certificate_document",
    "parse_matrix",
    "phase_erased",
    "psd_oracle",
    "psrp_check",
    "psrp_subset",
    "quadratic_form",
    "random_certificate",
    "read_matrix_file",
    "reconstruct",
    "recognize",
    "recognize_binary",
    "validate_hermitian",
    "verify_certificate",
    "verify_factorization",
    "write_matrix_file",
]
