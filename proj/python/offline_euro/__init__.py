"""Python bindings for the offline-euro C++ core."""

from ._core import (  # noqa: F401
    G1,
    G2,
    GT,
    CrsSetup,
    DigitalEuro,
    KeyPair,
    Rng,
    Scalar,
    Signature,
    TransactionProof,
    bench_growth,
    bench_verify,
    derive_randomization,
    extract_committed_g1,
    extract_committed_g2,
    frame_tag_name,
    generate_crs,
    least_squares,
    pair,
    predicted_size,
    prove,
    run_double_spend,
    run_duplicate_deposit,
    run_honest,
    sign,
    verify,
    verify_proof,
)

PROOF_SIZE = TransactionProof.ENCODED_SIZE
