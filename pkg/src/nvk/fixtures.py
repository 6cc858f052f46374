"""Worked examples with known closed forms.

Everything here is a hard-coded fixture used as an oracle against the
quadrature path: the three reference measures, their Poisson-type closed
forms, the 16-row table of the symmetric extension of ``D`` for the
antidiagonal measure, the piecewise symmetric extension of
``-1/(z1 + z2)``, and the data of the Loewner counterexample.
"""

import math

import numpy as np

from .functions import Affine, Constant, DataBacked, InverseSum
from .measures import Atoms, CurvePushforward, ScaledLebesgue
from .numerics import as_point, orthant

__all__ = [
    "curve_measure",
    "dirac_measure",
    "lebesgue_measure",
    "lebesgue_D",
    "dirac_D",
    "inverse_sum_D",
    "constant_i_D",
    "residue_D",
    "ORTHANT_TABLE",
    "orthant_row",
    "orthant_D",
    "orthant_table_to_json",
    "inverse_sum_sym",
    "error_display",
    "LOEWNER_POINTS",
    "LOEWNER_COEFFICIENTS",
    "LOEWNER_VALUE",
    "loewner_F1",
    "hn_fixtures",
]


def curve_measure():
    """``pi`` times the pushforward of Lebesgue measure under ``s -> (s, -s)``."""
    return CurvePushforward("antidiagonal", math.pi)


def dirac_measure():
    """``pi^2`` times the unit mass at the origin of R^2."""
    return Atoms([[0.0, 0.0]], [math.pi**2])


def lebesgue_measure(n=1):
    return ScaledLebesgue((1.0,) * n)


# -- Poisson-type closed forms -----------------------------------------------


def _pair(z, w):
    return np.asarray(z, dtype=complex), np.conj(np.asarray(w, dtype=complex))


def lebesgue_D(z, w):
    """Poisson-type function of Lebesgue measure on (C \\ R)^n.

    Per coordinate ``2i/(z - conj w)`` when both lie in C^+,
    ``-2i/(z - conj w)`` when both lie in C^-, and 0 otherwise.
    Broadcasts over leading axes.
    """
    z, b = _pair(z, w)
    sz, sw = np.sign(z.imag), np.sign(-b.imag)
    factor = np.where(sz == sw, sz * 2j / (z - b), 0.0)
    return np.prod(factor, axis=-1)


def dirac_D(z, w):
    z, b = _pair(z, w)
    return 1.0 / (z[..., 0] * b[..., 0] * z[..., 1] * b[..., 1])


def inverse_sum_D(z, w):
    """``D`` of ``-1/(z1 + z2)`` on C^{+2} x C^{+2}."""
    z, b = _pair(z, w)
    z1, z2, b1, b2 = z[..., 0], z[..., 1], b[..., 0], b[..., 1]
    return 2j * (z1 + z2 - b1 - b2) / ((z1 - b1) * (z2 - b2) * (z1 + z2) * (b1 + b2))


def constant_i_D(z, w):
    """``D`` of the constant ``i`` in two variables."""
    z, b = _pair(z, w)
    return -4.0 / ((z[..., 0] - b[..., 0]) * (z[..., 1] - b[..., 1]))


def residue_D(z, w):
    """Independent evaluation of the antidiagonal ``D_sym`` by residues.

    ``D = (1/pi) int ds / ((s - z1)(s - conj w1)(s + z2)(s + conj w2))``;
    closing the contour in C^+ gives ``2i`` times the sum of residues at the
    poles with positive imaginary part.  Assumes distinct poles.
    """
    z1, z2 = as_point(z)
    b1, b2 = np.conj(as_point(w))
    poles = [z1, b1, -z2, -b2]
    total = 0j
    for k, p in enumerate(poles):
        if p.imag > 0:
            total += 1.0 / np.prod([p - poles[j] for j in range(4) if j != k])
    return complex(2j * total)


# -- the 16-row table --------------------------------------------------------

_P, _M = 1, -1


def _row(zo, wo, expr, func):
    return {"z": zo, "w": wo, "expression": expr, "func": func}


# func(z1, z2, b1, b2) with b = conj(w)
ORTHANT_TABLE = [
    _row((_P, _P), (_P, _P), "2i(z1+z2-b1-b2)/((z1-b1)(z2-b2)(z1+z2)(b1+b2))",
         lambda z1, z2, b1, b2: 2j * (z1 + z2 - b1 - b2) / ((z1 - b1) * (z2 - b2) * (z1 + z2) * (b1 + b2))),
    _row((_M, _P), (_P, _P), "2i/((z1+b2)(z2-b2)(b1+b2))",
         lambda z1, z2, b1, b2: 2j / ((z1 + b2) * (z2 - b2) * (b1 + b2))),
    _row((_P, _M), (_P, _P), "2i/((z2+b1)(z1-b1)(b1+b2))",
         lambda z1, z2, b1, b2: 2j / ((z2 + b1) * (z1 - b1) * (b1 + b2))),
    _row((_M, _M), (_P, _P), "2i(z1+z2+b1+b2)/((z1+b2)(z2+b1)(z1+z2)(b1+b2))",
         lambda z1, z2, b1, b2: 2j * (z1 + z2 + b1 + b2) / ((z1 + b2) * (z2 + b1) * (z1 + z2) * (b1 + b2))),
    _row((_P, _P), (_M, _P), "2i/((z1+z2)(z2+b1)(z2-b2))",
         lambda z1, z2, b1, b2: 2j / ((z1 + z2) * (z2 + b1) * (z2 - b2))),
    _row((_M, _P), (_M, _P), "2i(z1-z2-b1+b2)/((z1-b1)(z2+b1)(z1+b2)(z2-b2))",
         lambda z1, z2, b1, b2: 2j * (z1 - z2 - b1 + b2) / ((z1 - b1) * (z2 + b1) * (z1 + b2) * (z2 - b2))),
    _row((_P, _M), (_M, _P), "0",
         lambda z1, z2, b1, b2: 0j),
    _row((_M, _M), (_M, _P), "-2i/((z1+z2)(z1-b1)(z1+b2))",
         lambda z1, z2, b1, b2: -2j / ((z1 + z2) * (z1 - b1) * (z1 + b2))),
    _row((_P, _P), (_P, _M), "2i/((z1+z2)(z1-b1)(z1+b2))",
         lambda z1, z2, b1, b2: 2j / ((z1 + z2) * (z1 - b1) * (z1 + b2))),
    _row((_M, _P), (_P, _M), "0",
         lambda z1, z2, b1, b2: 0j),
    _row((_P, _M), (_P, _M), "2i(-z1+z2+b1-b2)/((z1-b1)(z2+b1)(z1+b2)(z2-b2))",
         lambda z1, z2, b1, b2: 2j * (-z1 + z2 + b1 - b2) / ((z1 - b1) * (z2 + b1) * (z1 + b2) * (z2 - b2))),
    _row((_M, _M), (_P, _M), "-2i/((z1+z2)(z2+b1)(z2-b2))",
         lambda z1, z2, b1, b2: -2j / ((z1 + z2) * (z2 + b1) * (z2 - b2))),
    _row((_P, _P), (_M, _M), "-2i(z1+z2+b1+b2)/((z1+b2)(z2+b1)(z1+z2)(b1+b2))",
         lambda z1, z2, b1, b2: -2j * (z1 + z2 + b1 + b2) / ((z1 + b2) * (z2 + b1) * (z1 + z2) * (b1 + b2))),
    _row((_M, _P), (_M, _M), "-2i/((z1-b1)(z2+b1)(b1+b2))",
         lambda z1, z2, b1, b2: -2j / ((z1 - b1) * (z2 + b1) * (b1 + b2))),
    _row((_P, _M), (_M, _M), "-2i/((z2-b2)(z1+b2)(b1+b2))",
         lambda z1, z2, b1, b2: -2j / ((z2 - b2) * (z1 + b2) * (b1 + b2))),
    _row((_M, _M), (_M, _M), "2i(-z1-z2+b1+b2)/((z1+z2)(z1-b1)(z2-b2)(b1+b2))",
         lambda z1, z2, b1, b2: 2j * (-z1 - z2 + b1 + b2) / ((z1 + z2) * (z1 - b1) * (z2 - b2) * (b1 + b2))),
]


def orthant_row(z, w):
    key = (orthant(z), orthant(w))
    for row in ORTHANT_TABLE:
        if (row["z"], row["w"]) == key:
            return row
    raise ValueError(f"no table row for orthants {key}")


def orthant_D(z, w):
    """Symmetric extension of the antidiagonal ``D`` from the table."""
    z1, z2 = as_point(z)
    b1, b2 = np.conj(as_point(w))
    return complex(orthant_row(z, w)["func"](z1, z2, b1, b2))


def orthant_table_to_json():
    """Machine-readable table; ``b`` stands for ``conj(w)``."""
    return [
        {"id": k + 1, "z_orthant": list(r["z"]), "w_orthant": list(r["w"]), "expression": r["expression"]}
        for k, r in enumerate(ORTHANT_TABLE)
    ]


# -- symmetric extension of -1/(z1 + z2) -------------------------------------


def inverse_sum_sym(z):
    return InverseSum().evaluate_symmetric(z)


def error_display(z, w, reading="corrected"):
    """The two-term value quoted for ``z`` in C^+ x C^-, ``w`` in C^- x C^+.

    ``reading="printed"`` conjugates ``z2`` in the first term as printed;
    ``reading="corrected"`` uses ``1/(i - z2)``, which is what the
    piecewise symmetric extension gives.
    """
    if reading not in ("printed", "corrected"):
        raise ValueError("reading must be 'printed' or 'corrected'")
    z1, z2 = as_point(z)
    w1, w2 = as_point(w)
    first = z2.conjugate() if reading == "printed" else z2
    return complex(1.0 / (1j - first) + 1.0 / (1j + w1.conjugate()))


# -- Loewner counterexample --------------------------------------------------

LOEWNER_POINTS = np.array([[1j, -2 + 1j], [2 + 1j, 2j]])
LOEWNER_COEFFICIENTS = np.array(
    [(math.sqrt(377) - 7) / 2132 * (-33 - 113j), 1.0 + 0j]
)
LOEWNER_VALUE = (4901 - 255 * math.sqrt(377)) / 8528


def loewner_F1(D=inverse_sum_D):
    """``(z1 - conj w1)/(2i) * D(z, w)`` as a plain function."""
    def F(z, w):
        z, b = _pair(z, w)
        return (z[..., 0] - b[..., 0]) / 2j * D(z, w)
    return F


# -- Herglotz-Nevanlinna fixtures --------------------------------------------


def hn_fixtures(cfg=None):
    """Name -> function for every Herglotz-Nevanlinna fixture."""
    return {
        "constant-i-n1": Constant(1j, 1),
        "constant-i-n2": Constant(1j, 2),
        "affine": Affine(1.0, (2.0, 3.0)),
        "inverse-sum": InverseSum(),
        "inverse-sum-data": DataBacked(InverseSum().data, cfg, name="inverse-sum-data"),
        "lebesgue-data-n1": DataBacked(Constant(1j, 1).data, cfg, name="lebesgue-data-n1"),
    }
