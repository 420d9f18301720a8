import json

import numpy as np
import pytest

from phaseblocks import (
    RunReport,
    cholesky_structured,
    emit,
    lu_structured,
    parse_certificate_document,
    psd_oracle,
    psrp_check,
    random_certificate,
    reconstruct,
    recognize,
    validate_hermitian,
    verify_certificate,
)
from phaseblocks.documents import DocumentError


def test_certificate_document_fields():
    cert = recognize(validate_hermitian(np.ones((2, 2))))
    doc = json.loads(emit(cert))
    assert doc["kind"] == "certificate"
    assert doc["n"] == 2
    assert doc["blocks"] == [[1, 2]]
    assert doc["zero_set"] == []
    assert doc["phases"] == [[1.0, 0.0], [1.0, 0.0]]
    assert doc["canonical"] is True
    assert doc["tolerance_used"]["eps_mod"] == 1e-8


def test_zero_set_phases_are_marked_absent():
    cert = recognize(validate_hermitian(np.diag([1.0, 0.0])))
    doc = json.loads(emit(cert))
    assert doc["zero_set"] == [2]
    assert doc["phases"][1] == [0.0, 0.0]


def test_emit_parse_identity_on_certificates():
    for seed in range(40):
        cert = random_certificate(1 + seed % 12, seed=seed)
        text = emit(cert)
        assert emit(parse_certificate_document(text)) == text


def test_emit_is_deterministic():
    cert = random_certificate(9, seed=4)
    assert emit(cert) == emit(cert)


def test_run_report_for_rejection_contains_witness():
    broken = validate_hermitian(np.array([[1, 1, 0], [1, 1, 1], [0, 1, 1]], float))
    rejection = recognize(broken)
    report = RunReport(
        verdict="not_psd",
        witness=rejection.witness,
        offending_indices=rejection.offending_indices,
        tolerance_used=broken.tol,
    )
    doc = json.loads(emit(report))
    assert doc["verdict"] == "not_psd"
    assert doc["offending_indices"] == [1, 2, 3]
    witness = np.array([complex(re, im) for re, im in doc["witness"]])
    x = witness.conj() @ broken.entries @ witness
    assert x.real < -1e-6


def test_run_report_invariants():
    cert = recognize(validate_hermitian(np.eye(2)))
    with pytest.raises(ValueError):
        RunReport(verdict="nonsense")
    with pytest.raises(ValueError):
        RunReport(verdict="accepted")  # certificate required
    with pytest.raises(ValueError):
        RunReport(verdict="not_psd", certificate=cert, witness=np.ones(2))
    with pytest.raises(ValueError):
        RunReport(verdict="out_of_class", witness=np.ones(2))
    RunReport(verdict="accepted", certificate=cert)
    RunReport(verdict="io_error", diagnostics="unreadable")


def test_psrp_report_document():
    report = psrp_check(validate_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]])))
    doc = json.loads(emit(report))
    assert doc["kind"] == "psrp_report"
    assert doc["passed"] is False
    assert doc["subsets_checked"] == 3
    assert doc["failures"][0]["subset"] == [1]
    assert doc["failures"][0]["which_condition"] == "i"


def test_factor_pair_documents():
    cert = recognize(validate_hermitian(np.ones((2, 2))))
    lu_doc = json.loads(emit(lu_structured(cert)))
    assert lu_doc["kind"] == "factor_pair"
    assert lu_doc["lower"] == [[[1.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [1.0, 0.0]]]
    assert lu_doc["upper"][0] == [[1.0, 0.0], [1.0, 0.0]]
    chol_doc = json.loads(emit(cholesky_structured(cert)))
    assert chol_doc["upper"] is None


def test_oracle_verdict_document():
    doc = json.loads(emit(psd_oracle(validate_hermitian(np.diag([-1.0, 1.0])))))
    assert doc["kind"] == "oracle_verdict"
    assert doc["psd"] is False
    assert doc["min_eigenvalue"] == pytest.approx(-1.0)
    assert doc["witness"] is not None


def test_verify_report_document():
    ones = validate_hermitian(np.ones((3, 3)))
    doc = json.loads(emit(verify_certificate(recognize(ones), ones)))
    assert doc["kind"] == "verify_report"
    assert doc["passed"] is True


def test_parse_rejects_malformed_documents():
    with pytest.raises(DocumentError):
        parse_certificate_document("not json")
    with pytest.raises(DocumentError):
        parse_certificate_document(json.dumps({"kind": "psrp_report"}))
    with pytest.raises(DocumentError):
        parse_certificate_document(json.dumps({"kind": "certificate", "n": 2}))


def test_emit_rejects_unknown_types():
    with pytest.raises(TypeError):
        emit(object())
