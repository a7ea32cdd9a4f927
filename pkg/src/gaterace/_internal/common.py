from enum import Enum
from typing import TYPE_CHECKING, Any, Tuple, TypeVar

import numpy as np

T = TypeVar("T")

VarTuple = Tuple[T, ...]

Vector3 = Tuple[float, float, float]
Matrix3 = Tuple[Vector3, Vector3, Vector3]

if TYPE_CHECKING:
    from numpy.typing import NDArray

    FloatArray = NDArray[np.floating[Any]]
else:
    FloatArray = np.ndarray


class Mode(Enum):
    """Which observations the actor and the critic receive"""

    STATE = "state"
    PIXEL_SYM = "pixel-sym"
    PIXEL_ASYM = "pixel-asym"

    @property
    def uses_pixels(self) -> bool:
        return self is not Mode.STATE

    @property
    def privileged_critic(self) -> bool:
        return self is not Mode.PIXEL_SYM
