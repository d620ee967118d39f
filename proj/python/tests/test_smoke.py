import math

import pytest

import pwexp


def test_tau():
    assert pwexp.tau() == pytest.approx((math.sqrt(2) + 1) ** 0.25 / math.sqrt(2), abs=1e-15)


def test_branches_of_the_cube():
    bs = pwexp.branches(0.9, 3)
    assert len(bs) == 8
    assert sum(abs(b["linear"][0] * b["linear"][3] - b["linear"][1] * b["linear"][2]) > 0 for b in bs) == 8


def test_apply():
    assert pwexp.apply(1.0, 1.5, 0.5) == pytest.approx((1.0, 0.0))


def test_certificate():
    c = pwexp.certify(pwexp.tau(), 3, "paper")
    assert c["satisfied"]
    assert c["sigma_paper"] == pytest.approx(1 / (8 * pwexp.tau() ** 3))
    assert not pwexp.certify(pwexp.tau(), 3, "spectral")["satisfied"]
    with pytest.raises(ValueError):
        pwexp.certify(0.9, 3, "frobenius")


def test_uniform_density_at_one():
    d = pwexp.ulam_density(1.0, 16)
    assert d["converged"]
    assert max(abs(v - 1.0) for v in d["values"]) <= 1e-8
    assert sum(v * a for v, a in zip(d["values"], d["areas"])) == pytest.approx(1.0)


def test_sweep_trend():
    rows = pwexp.stability_sweep(1.0, [0.9, 0.95, 0.99], 32)
    l1 = [r["l1_dist"] for r in rows]
    assert l1[0] > l1[1] > l1[2] > 0
    assert all(r["weakstar_gaps"]["1"] < 1e-9 for r in rows)


def test_lasota_yorke_rows():
    rows = pwexp.ly_check(1.0, "chi0", 2)
    assert [r["j"] for r in rows] == [0, 1, 2]
    assert all(r["variation"] <= r["bound"] for r in rows)


def test_orbit_statistics():
    assert pwexp.lyapunov_exponent(1.0, 0.3, 0.1, 50) == pytest.approx(0.5 * math.log(2), abs=1e-9)
    s = pwexp.orbit_stats(0.95, 1000, seed=4)
    assert s["birkhoff"]["1"] == 1.0
    assert pwexp.birkhoff_average(1.0, "1", 0.3, 0.1, 10) == 1.0


def test_tent1d_oracle():
    u = pwexp.tent1d_ulam(2.0, 4)
    assert u["matrix"][0] == pytest.approx([0.5, 0.5, 0.0, 0.0])
    assert u["density"] == pytest.approx([0.5] * 4, abs=1e-8)


def test_cli_roundtrip():
    code, out, _ = pwexp.run_cli(["orbit", "--t", "1", "--n", "100"])
    assert code == 0
    assert out.splitlines()[0].startswith("t,seed,n,lyapunov")
    assert pwexp.run_cli(["verify", "--t", "2"])[0] == 1
