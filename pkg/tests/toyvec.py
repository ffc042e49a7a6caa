"""Worked toy vector over TINY (q=11, p=23, g=2).

Expected integers were brute-forced independently of the package (plain
modular arithmetic, no library code) and frozen here.
"""

import random
from dataclasses import dataclass

from iovauth import clss
from iovauth.bilinear import ScriptedOracle, ScriptedRandom, group_by_name
from iovauth.iov import ObuKeyMaterial, sign_report

S, X_SECRET, R_ID, T_RAND = 3, 2, 7, 4
H0, H1, H2, H3 = 4, 5, 3, 2

EXPECTED = {
    "P_pub1": 3, "P_pub2": 8, "PK1": 18,
    "s_id": 2, "PK": (18, 7, 6), "sigma": 8, "X": 8, "sides": 6,
    "PKp": (3, 6, 2), "Ppub1p": 1, "r1": 6, "r2": 10, "sigma_p": 6, "Xp": 7, "sides_p": 2,
    "D_IDR": 9,
}


def scripted_oracle(n=50):
    return ScriptedOracle({"H0": [H0] * n, "H1": [H1] * n, "H2": [H2] * n, "H3": [H3] * 10})


@dataclass
class ToyFlow:
    group: object
    params: object
    master: object
    x: int
    ppk: object
    sk: object
    pk: object
    keys: ObuKeyMaterial


def build(identity="OBU-1", s=S, x=X_SECRET, r_id=R_ID, oracle=None):
    G = group_by_name("TINY")
    master, params = clss.setup(G, ScriptedRandom([s]), oracle or scripted_oracle())
    x, PK1 = clss.set_secret_value(G, ScriptedRandom([x]))
    ppk = clss.extract_partial_key(params, master, identity, PK1, ScriptedRandom([r_id]))
    sk, pk = clss.assemble_keys(G, x, PK1, ppk)
    return ToyFlow(G, params, master, x, ppk, sk, pk, ObuKeyMaterial(identity, sk, pk))


def toy_request(flow, t=T_RAND, report=b"ice", T=1000, enc_pk=5, seed=0):
    rng = ScriptedRandom([t], random.Random(seed))
    return sign_report(flow.params, flow.keys, enc_pk, report, T, rng)
