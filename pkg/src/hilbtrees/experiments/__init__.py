from .certificates import (SCHEMA_VERSION, WITNESS_SEMANTICS, ExperimentReport,
                           WitnessCertificate, load_certificate, replay_certificate,
                           save_certificate)
from .drivers import (EXCEPTION_TABLE, check_assertion_H, check_assertion_R, expected_be2,
                      find_linking_point, gallery_type, oracle_check, question_qbe2_evidence,
                      rng_for, verify_prop_be1, verify_prop_fe1, verify_prop_fe2_genus0,
                      verify_theorem_be2, verify_theorem_eb1)

__all__ = [
    "SCHEMA_VERSION", "WITNESS_SEMANTICS", "ExperimentReport", "WitnessCertificate",
    "load_certificate", "replay_certificate", "save_certificate", "EXCEPTION_TABLE",
    "check_assertion_H", "check_assertion_R", "expected_be2", "find_linking_point",
    "gallery_type", "oracle_check", "question_qbe2_evidence", "rng_for", "verify_prop_be1",
    "verify_prop_fe1", "verify_prop_fe2_genus0", "verify_theorem_be2", "verify_theorem_eb1",
]
