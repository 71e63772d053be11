import json

import numpy as np


class ScaledPlan:
    """
    Constants and affine maps of the scaled network l1(sigma(l0(f_0, ..., f_K))).

    l0 maps the outputs to sum_j l0_theta[j] * f_j + z0, the optimal stack divided by m0 and moved to the anchor.
    l1 maps an activation value y to l1_scale * (y - y0), with l1_scale = m0 * tau'(y0). The remaining fields are the
    bounds the construction derives them from; m0 * m1 * gamma^2 bounds the distance to the optimal stack.
    """

    def __init__(self, activation_id: str, z0: float, y0: float, m_g: float, m_sigma: float, m_tau: float,
                 m_gamma: int, gamma0: float, gamma: float, m0: float, m1: float, epsilon: float, theta,
                 l1_scale: float, measured_deviation: float = None):
        self.activation_id = activation_id
        self.z0 = z0
        self.y0 = y0
        self.m_g = m_g
        self.m_sigma = m_sigma
        self.m_tau = m_tau
        self.m_gamma = m_gamma
        self.gamma0 = gamma0
        self.gamma = gamma
        self.m0 = m0
        self.m1 = m1
        self.epsilon = epsilon
        self.theta = np.array(theta, dtype=float)
        self.l0_theta = self.theta / m0
        self.l1_scale = l1_scale
        self.measured_deviation = measured_deviation

    @property
    def l1_offset(self) -> float:
        return -self.l1_scale * self.y0

    def deviation_bound(self) -> float:
        return self.m0 * self.m1 * self.gamma ** 2

    def to_dict(self) -> dict:
        return {
            "activation": self.activation_id,
            "z0": self.z0,
            "y0": self.y0,
            "m_g": self.m_g,
            "m_sigma": self.m_sigma,
            "m_tau": self.m_tau,
            "m_gamma": self.m_gamma,
            "gamma0": self.gamma0,
            "gamma": self.gamma,
            "m0": self.m0,
            "m1": self.m1,
            "epsilon": self.epsilon,
            "theta": [float(value) for value in self.theta],
            "l0": {"coefficients": [float(value) for value in self.l0_theta], "offset": self.z0},
            "l1": {"scale": self.l1_scale, "offset": self.l1_offset},
            "deviation_bound": self.deviation_bound(),
            "measured_deviation": self.measured_deviation,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, document: dict) -> "ScaledPlan":
        return cls(activation_id=document["activation"],
                   z0=document["z0"],
                   y0=document["y0"],
                   m_g=document["m_g"],
                   m_sigma=document["m_sigma"],
                   m_tau=document["m_tau"],
                   m_gamma=document["m_gamma"],
                   gamma0=document["gamma0"],
                   gamma=document["gamma"],
                   m0=document["m0"],
                   m1=document["m1"],
                   epsilon=document["epsilon"],
                   theta=document["theta"],
                   l1_scale=document["l1"]["scale"],
                   measured_deviation=document.get("measured_deviation"))

    def __repr__(self):
        return (f"ScaledPlan({self.activation_id}, epsilon={self.epsilon:.3g}, gamma={self.gamma:.3g}, "
                f"m0={self.m0:.3g})")
