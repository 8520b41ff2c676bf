"""Regenerates fixtures/*.json. Usage: python3 tools/make_fixtures.py [outdir]"""

import json
import pathlib
import sys

import numpy as np

GAMMA1 = np.array([[-1.0, -0.5], [-0.5, -1.0]])


def dump(path, name, a, b, lam):
    rows = lambda m: "[\n" + ",\n".join("    " + json.dumps(list(map(float, r))) for r in m) + "\n  ]"
    text = (
        "{\n"
        f'  "name": {json.dumps(name)},\n'
        f'  "n": {len(lam)},\n'
        f'  "A": {rows(a)},\n'
        f'  "B": {rows(b)},\n'
        f'  "lambda": {json.dumps(list(map(float, lam)))}\n'
        "}\n"
    )
    path.write_text(text)


def from_invariants(path, name, gamma, lam, b):
    b_inv = np.linalg.inv(b)
    dump(path, name, b_inv @ gamma, b, b_inv @ lam)


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).parent.parent / "fixtures")
    out.mkdir(parents=True, exist_ok=True)
    eye = np.eye(2)
    dump(out / "example1_lv.json", "example1-lv", GAMMA1, eye, [0.5, 0.5])
    for rho, tag in ((0.5, "0.5"), (1.0, "1")):
        b = np.array([[1.0, 0.2], [0.2, 1.0]])
        from_invariants(out / f"example1_qp_rho{tag}.json", f"example1-qp-eps0.2-delta0.2-rho{rho:g}",
                        GAMMA1, np.array([rho, rho]), b)
    from_invariants(out / "example3_qp_rho3.2.json", "example3-qp-eps0.2-delta0.2-rho3.2",
                    GAMMA1, np.array([3.2, 3.2]), np.array([[1.0, 0.2], [0.2, 1.0]]))
    from_invariants(out / "example1_qp_reversed.json", "example1-qp-eps-2-delta-2-rho0.5",
                    GAMMA1, np.array([0.5, 0.5]), np.array([[1.0, -2.0], [-2.0, 1.0]]))
    gamma2 = np.array([[-0.5, -0.25], [0.45, -0.3]])
    lam2 = np.array([0.5, -0.3])
    dump(out / "example2_lv.json", "example2-predator-prey-lv", gamma2, eye, lam2)
    from_invariants(out / "example2_qp.json", "example2-predator-prey-qp-rho1.5-0.75",
                    gamma2, lam2, np.diag([1.5, 0.75]))


if __name__ == "__main__":
    main()
