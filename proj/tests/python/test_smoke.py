"""End-to-end checks of the python bindings against known fixture values."""

import math

import nfcircle


def main():
    assert nfcircle.tool_version().startswith("nfcircle")

    names = nfcircle.builtin_fixture_names()
    assert "qi" in names and "qcbrt2" in names

    qi = nfcircle.Instance.from_fixture("qi")
    assert (qi.m, qi.n, qi.slots) == (1, 2, 5)
    assert qi.label == "qi"
    assert qi.rho > 0

    assert qi.count(8.0) == 74
    assert qi.orthogonality_count(8.0) == 74
    assert qi.naive_count(8.0) == 74

    doc = qi.to_dict()
    again = nfcircle.Instance.from_dict(doc)
    assert again.count(8.0) == 74

    s = qi.complete_sum(["1/3"])
    assert abs(s - complex(0, -math.sqrt(3) / 27)) < 1e-9

    density = qi.local_density(2)
    assert density["stabilized"]
    assert abs(density["mu"][-1] - 0.75) < 1e-6

    cert = qi.hensel(5)
    assert cert["found"]
    assert qi.hensel_replay(cert)

    places = qi.real_places()
    assert places and all(p["ok"] for p in places)

    wa = nfcircle.Instance.from_fixture("wapprox-qi")
    witness = wa.wapprox([8, 16, 32])
    assert witness["found"]
    assert wa.wapprox_replay(witness)

    try:
        nfcircle.Instance.from_fixture("missing")
    except nfcircle.SchemaError:
        pass
    else:
        raise AssertionError("unknown fixture must raise SchemaError")

    print("smoke ok")


if __name__ == "__main__":
    main()
