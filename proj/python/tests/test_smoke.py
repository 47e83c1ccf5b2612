import pytest

import offline_euro as oe


def test_schnorr_roundtrip():
    rng = oe.Rng(1)
    kp = oe.KeyPair.generate(rng)
    sig = oe.sign(b"serial", kp.secret, rng)
    assert oe.verify(b"serial", sig, kp.public_key)
    assert not oe.verify(b"serial!", sig, kp.public_key)
    assert oe.Signature.from_bytes(sig.to_bytes()) == sig
    assert len(sig.to_bytes()) == 64


def test_group_encodings():
    g = oe.G1.generator()
    assert len(g.to_bytes()) == oe.G1.ENCODED_SIZE == 48
    assert len(oe.G2.generator().to_bytes()) == 96
    assert len(oe.pair(g, oe.G2.generator()).to_bytes()) == 576
    with pytest.raises(ValueError):
        oe.G1.from_bytes(b"\x00" * 47)


def test_proof_and_extraction():
    rng = oe.Rng(2)
    setup = oe.generate_crs(rng)
    crs = setup.crs
    x = oe.Scalar.random_nonzero(rng)
    y = oe.Scalar.random(rng)
    s = oe.Scalar.random_nonzero(rng)
    rand = oe.derive_randomization(crs, rng).elements
    X, Y = crs.g.pow(x), crs.h.pow(y)
    proof = oe.prove(x, y, s, rand, oe.pair(X, Y), crs, rng)
    assert oe.verify_proof(proof, crs)
    assert len(proof.to_bytes()) == oe.PROOF_SIZE == 1152
    assert oe.extract_committed_g1(proof.c1, proof.c2, setup.trapdoor.alpha) == X
    assert oe.extract_committed_g2(proof.d1, proof.d2, setup.trapdoor.beta) == Y
    assert oe.TransactionProof.from_bytes(proof.to_bytes()) == proof


def test_honest_scenario_and_euro_codec():
    report = oe.run_honest(transfers=3, seed=5)
    assert report["ok"], report["lines"]
    assert report["deposits"][0]["status"] == "accepted"
    payloads = [p for (_, _, tag, p) in report["frames"] if tag == "DEPOSIT_PAYLOAD"]
    assert len(payloads) == 1
    # The deposit bundle starts with the euro carrying four proofs.
    size = oe.DigitalEuro.encoded_size(4)
    euro = oe.DigitalEuro.from_bytes(payloads[0][:size])
    assert len(euro.proofs) == 4
    assert euro.to_bytes() == payloads[0][:size]
    assert size == oe.predicted_size(4) + 4


def test_transports_agree():
    a = oe.run_honest(transfers=2, seed=9, transport="inproc")
    b = oe.run_honest(transfers=2, seed=9, transport="socket")
    assert a["frames"] == b["frames"]


def test_double_spend_names_holder():
    report = oe.run_double_spend(transfers=3, fork_at=1, seed=4)
    assert report["ok"], report["lines"]
    second = report["deposits"][1]
    assert second["status"] == "double-spend"
    assert second["identity"] == "U1"
    assert second["used_ttp"]


def test_duplicate_deposit_skips_ttp():
    report = oe.run_duplicate_deposit(transfers=2, seed=4)
    assert report["ok"], report["lines"]
    assert report["revocations"] == 0
    assert not report["deposits"][1]["used_ttp"]


def test_benches():
    rows = oe.bench_growth(4, seed=3)
    assert [i for i, _ in rows] == [1, 2, 3, 4]
    deltas = {b1 - b0 for (_, b0), (_, b1) in zip(rows, rows[1:])}
    assert deltas == {1152}
    timings = oe.bench_verify(3, repeats=1, seed=3)
    assert len(timings) == 3
    slope, _, r2 = oe.least_squares([1.0, 2.0, 3.0], [2.0, 4.0, 6.0])
    assert slope == pytest.approx(2.0)
    assert r2 == pytest.approx(1.0)


def test_frame_tags():
    assert oe.frame_tag_name(0x40) == "REVOKE_REQ"
    with pytest.raises(ValueError):
        oe.frame_tag_name(0x55)
