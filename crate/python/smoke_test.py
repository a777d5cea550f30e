"""Smoke test for the lpacket extension module.

Build and install it first:  pip install --no-build-isolation -e crates/py
"""

import json
import pathlib

import lpacket

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "crates" / "core" / "corpus"


def test_abelian_groups():
    g = lpacket.FinAbGroup([2, 4])
    assert g.order() == 8 and g.factors == [2, 4]
    assert g.dual() == g
    f = lpacket.AbHom(lpacket.FinAbGroup([4]), lpacket.FinAbGroup([2]), [[1]])
    assert f.kernel().order() * f.image().order() == 4
    assert f.apply([3]) == [1]


def test_component_group():
    sample = json.loads((CORPUS / "sp4_113.json").read_text())["parameters"][0]
    data = lpacket.component_group(sample)
    assert data["s_bar"] == [2, 2]
    for k in range(1, 6):
        assert lpacket.discrete_sp_agrees(k)


def test_lifting():
    datum = lpacket.LiftingDatum.abelian([2, 2], [[1], [1]], [2])
    assert datum.s_tilde.order() == 2
    counts = datum.counts()
    assert counts["orbit_size"] * counts["orbit_count"] == 4
    assert counts["coarse_total"] == 2
    pairing = datum.pairing()
    assert "assignment" in pairing, pairing
    refined = datum.refined()
    assert len(refined["parts"]) == datum.fibre
    report = datum.analyze()
    assert all(c["passed"] for c in report["counts"]["checks"])


def test_clifford():
    suite = lpacket.clifford_suite({"named": "D4"}, "center")
    assert all(c["passed"] for c in suite["checks"])
    assert sum(1 for i in suite["incidences"] if i["m"] == 2) == 1


def test_cli():
    out, err, code = lpacket.run_cli(["analyze", str(CORPUS / "obstruction.json")])
    assert code == 2 and "obstruction" in out and "pairing-exists" in err
    out, _, code = lpacket.run_cli(["analyze", str(CORPUS / "sp4_113.json")])
    assert code == 0 and "S̄_φ ≅ (Z/2)^2" in out
    _, _, code = lpacket.run_cli(["analyze", "x.json", "--seed", "3"])
    assert code == 1
    text = lpacket.normalize((CORPUS / "classical.json").read_text())
    assert lpacket.normalize(text) == text


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name}: ok")
