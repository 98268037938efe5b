import cmath
import math

import pytest

import altdec


def test_sigma_delta_by_hand():
    run = altdec.sigma_delta([0.3, 0.3, 0.3], r=1, complex_mode=False)
    assert [q.real for q in run["q"]] == [0.25, 0.25, 0.25]
    assert [round(u.real, 12) for u in run["u"]] == [0.05, 0.1, 0.15]


def test_scaling_entry():
    assert abs(altdec.scaling_entry(1, 4, 2) - cmath.exp(1j * math.pi / 4) / math.sqrt(2)) < 1e-15


def test_codec_round_trip():
    q = [0.25 + 0.25j, 0.25 - 0.25j, -0.25 - 0.25j, -0.25 + 0.25j]
    v = altdec.decimate(q, rho=2)
    data = altdec.encode(v, m=4, rho=2, L=1)
    assert len(data) == 35 and data[-1] == 0x91
    assert altdec.decode(data)["values"] == v


def test_bad_stream_raises():
    with pytest.raises(altdec.AltdecError) as info:
        altdec.decode(b"DCM8")
    assert info.value.code == "malformed_header"


def test_experiment_and_slopes():
    cfg = '{"k": 4, "eta": 6, "rho_list": [2, 4, 8], "r_list": [1], "trials": 2}'
    csv = altdec.run_experiment(cfg)
    assert csv == altdec.run_experiment(cfg, jobs=3)
    lines = csv.strip().splitlines()
    assert lines[0].startswith("scheme,r,rho,m")
    assert len(lines) == 1 + 3 * 3
    slopes = altdec.fit_slopes(csv).strip().splitlines()
    assert slopes[0] == "scheme,r,slope,intercept,r_squared,points"
    alt = next(l for l in slopes if l.startswith("alternative,1,"))
    assert float(alt.split(",")[2]) < -0.5


def test_verify_small_grid():
    report = altdec.verify_all(1)
    assert report["pass"]
    assert {r["name"] for r in report["identities"]} >= {"scaling_identity", "canonical_equality"}
