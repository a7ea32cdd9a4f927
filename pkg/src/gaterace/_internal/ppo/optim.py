from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..common import FloatArray


def clip_grad_norm(grad: FloatArray, max_norm: float) -> Tuple[FloatArray, float]:
    """Rescales ``grad`` so its global L2 norm does not exceed ``max_norm``, returns the norm before clipping"""
    norm = float(np.sqrt(np.sum(np.square(grad, dtype=np.float64))))
    if norm > max_norm:
        grad = grad * (max_norm / (norm + 1e-6))
    return grad, norm


@dataclass
class Adam:
    """Adam over one flat parameter vector, moments are float64"""

    size: int
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def __post_init__(self):
        self.m = np.zeros(self.size)
        self.v = np.zeros(self.size)
        self.t = 0

    def step(self, params: FloatArray, grad: FloatArray, lr: float) -> FloatArray:
        """Returns updated parameters for a loss being minimized"""
        self.t += 1
        grad = np.asarray(grad, dtype=np.float64)
        self.m = self.beta1 * self.m + (1 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1 - self.beta2) * grad * grad
        m_hat = self.m / (1 - self.beta1 ** self.t)
        v_hat = self.v / (1 - self.beta2 ** self.t)
        updated = params.astype(np.float64) - lr * m_hat / (np.sqrt(v_hat) + self.eps)
        return updated.astype(params.dtype)

    def state_dict(self) -> dict:
        return {"adam_m": self.m, "adam_v": self.v, "adam_t": np.int64(self.t)}

    def load_state_dict(self, state) -> None:
        self.m = np.array(state["adam_m"], dtype=np.float64)
        self.v = np.array(state["adam_v"], dtype=np.float64)
        self.t = int(state["adam_t"])
