"""Write certificates, check them independently, and watch a forgery fail.

Run: python demos/certificate_audit.py
"""

import json

from gridcast import certificates as certs
from gridcast.cli import build_certificate
from gridcast.grid import make_grid


def show(label, cert):
    verdict = certs.verify(cert)
    print(f"{label:38s} {'OK  ' if verdict.ok else 'FAIL'} {verdict.message}")


def main():
    cases = [
        ("P_4 x P_17 tiling", "p4-tiling", make_grid("pxp", 4, 17)),
        ("P_20 x P_25 lattice", "lattice", make_grid("pxp", 20, 25)),
        ("P_9 x C_26 row-vector multipacking", "row-vector", make_grid("pxc", 9, 26)),
        ("C_7 x C_9 uniform multipacking", "cxc-multipacking", make_grid("cxc", 7, 9)),
        ("C_7 x C_9 uniform fractional broadcast", "cxc-fractional-broadcast", make_grid("cxc", 7, 9)),
    ]
    texts = {}
    for label, kind, g in cases:
        text = certs.dumps(build_certificate(kind, g))
        texts[kind] = text
        show(label, certs.loads(text))

    print("\nthe uniform multipacking serializes as a single default weight:")
    data = json.loads(texts["cxc-multipacking"])
    print(f"  default={data['default']} payload entries={len(data['payload'])} claim={data['claim']}")

    print("\nforgeries:")
    forged = json.loads(texts["p4-tiling"])
    forged["payload"].pop()
    show("tiling with a broadcaster removed", certs.from_dict(forged))

    greedy = json.loads(texts["cxc-multipacking"])
    greedy["default"] = "1/6"
    show("multipacking inflated to 1/6", certs.from_dict(greedy))

    bold = json.loads(texts["row-vector"])
    bold["claim"]["bound"] = str(int(bold["claim"]["bound"]) + 1)
    show("row vector claiming one more", certs.from_dict(bold))


if __name__ == "__main__":
    main()
