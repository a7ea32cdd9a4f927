"""Layer kernels with exact backward passes.

Every forward function returns its output together with whatever the backward pass needs,
nothing is stored on module or object state, so one set of parameters can serve many threads.
Tensors are ``NCHW`` for convolutions and ``(batch, features)`` for dense layers.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..common import FloatArray


def conv_output_size(size: int, kernel: int, stride: int) -> int:
    return (size - kernel) // stride + 1


@dataclass(frozen=True, eq=False)
class ConvCache:
    columns: FloatArray
    input_shape: Tuple[int, int, int, int]
    stride: int


def conv2d_forward(x: FloatArray, weight: FloatArray, bias: FloatArray, stride: int) -> Tuple[FloatArray, ConvCache]:
    n, c, _, _ = x.shape
    out_channels, _, kh, kw = weight.shape
    windows = sliding_window_view(x, (kh, kw), axis=(2, 3))[:, :, ::stride, ::stride]
    out_h, out_w = windows.shape[2], windows.shape[3]
    columns = windows.transpose(0, 2, 3, 1, 4, 5).reshape(n * out_h * out_w, c * kh * kw)
    out = columns @ weight.reshape(out_channels, -1).T + bias
    out = out.reshape(n, out_h, out_w, out_channels).transpose(0, 3, 1, 2)
    return np.ascontiguousarray(out), ConvCache(columns, x.shape, stride)


def conv2d_backward(
    dout: FloatArray,
    weight: FloatArray,
    cache: ConvCache,
    need_input_grad: bool = True,
) -> Tuple[Optional[FloatArray], FloatArray, FloatArray]:
    n, out_channels, out_h, out_w = dout.shape
    _, c, kh, kw = weight.shape
    flat_dout = dout.transpose(0, 2, 3, 1).reshape(-1, out_channels)
    dweight = (flat_dout.T @ cache.columns).reshape(weight.shape)
    dbias = flat_dout.sum(axis=0)
    if not need_input_grad:
        return None, dweight, dbias

    dcolumns = (flat_dout @ weight.reshape(out_channels, -1)).reshape(n, out_h, out_w, c, kh, kw)
    dx = np.zeros(cache.input_shape, dtype=dout.dtype)
    s = cache.stride
    for i in range(kh):
        for j in range(kw):
            dx[:, :, i:i + s * out_h:s, j:j + s * out_w:s] += dcolumns[:, :, :, :, i, j].transpose(0, 3, 1, 2)
    return dx, dweight, dbias


def dense_forward(x: FloatArray, weight: FloatArray, bias: FloatArray) -> FloatArray:
    return x @ weight.T + bias


def dense_backward(dy: FloatArray, x: FloatArray, weight: FloatArray) -> Tuple[FloatArray, FloatArray, FloatArray]:
    return dy @ weight, dy.T @ x, dy.sum(axis=0)


def relu_forward(x: FloatArray) -> FloatArray:
    return np.maximum(x, 0)


def relu_backward(dy: FloatArray, y: FloatArray) -> FloatArray:
    return dy * (y > 0)
