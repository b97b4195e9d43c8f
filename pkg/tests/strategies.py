"""Hypothesis strategies for admissible deformation parameters."""

import cmath
import math

from hypothesis import assume
from hypothesis import strategies as st

from qpbose import DeformationParams

GAP = 0.05
log_q = st.floats(math.log(0.15), math.log(2.5))


@st.composite
def real_params(draw):
    # near-1 values become exactly 1 (RealPOne); otherwise the slowest ratio
    # can sit so close to 1 that no finite cap resolves the series
    lq, lp = (0.0 if abs(v) < GAP else v for v in (draw(log_q), draw(log_q)))
    assume(abs(lq - lp) >= GAP and abs(lq + lp) >= GAP)
    return DeformationParams.from_qp(math.exp(lq), math.exp(lp))


@st.composite
def complex_params(draw):
    lr = draw(st.floats(-0.7, 0.7))
    assume(abs(lr) >= GAP)
    r = math.exp(lr)
    theta = draw(st.floats(GAP, math.pi - GAP)) * draw(st.sampled_from((-1, 1)))
    q = cmath.rect(r, theta)
    return DeformationParams.from_qp(q, q.conjugate())


@st.composite
def unit_circle_params(draw):
    theta = draw(st.floats(GAP, math.pi - GAP))
    return DeformationParams(theta, draw(st.sampled_from((-1, 1))) * math.pi / 2, "complex")


any_params = st.one_of(real_params(), complex_params(), unit_circle_params())


@st.composite
def params_and_eta(draw, params=any_params):
    p = draw(params)
    margin = draw(st.floats(0.1, 3.0))
    return p, max(p.log_max_modulus, 0.0) + margin
