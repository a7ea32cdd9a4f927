import numpy as np
import pytest
from tests_helpers import central_difference

from gaterace._internal.neural.layers import (
    conv2d_backward,
    conv2d_forward,
    conv_output_size,
    dense_backward,
    dense_forward,
    relu_backward,
    relu_forward,
)


def naive_conv(x, weight, bias, stride):
    n, c, h, w = x.shape
    out_channels, _, kh, kw = weight.shape
    out_h = conv_output_size(h, kh, stride)
    out_w = conv_output_size(w, kw, stride)
    out = np.zeros((n, out_channels, out_h, out_w))
    for b in range(n):
        for o in range(out_channels):
            for i in range(out_h):
                for j in range(out_w):
                    patch = x[b, :, i * stride:i * stride + kh, j * stride:j * stride + kw]
                    out[b, o, i, j] = np.sum(patch * weight[o]) + bias[o]
    return out


@pytest.mark.parametrize(
    ["size", "kernel", "stride", "expected"],
    [(84, 8, 4, 20), (20, 4, 2, 9), (9, 3, 1, 7), (8, 3, 1, 6)],
)
def test_conv_output_size(size, kernel, stride, expected):
    assert conv_output_size(size, kernel, stride) == expected


@pytest.mark.parametrize("stride", [1, 2, 3])
def test_conv_forward_matches_naive_loop(rng, stride):
    x = rng.normal(size=(2, 3, 9, 9))
    weight = rng.normal(size=(4, 3, 3, 3))
    bias = rng.normal(size=4)

    out, _ = conv2d_forward(x, weight, bias, stride)

    assert np.allclose(out, naive_conv(x, weight, bias, stride), rtol=0, atol=1e-12)


@pytest.mark.parametrize("stride", [1, 2])
def test_conv_backward_matches_finite_differences(rng, stride):
    x = rng.normal(size=(2, 2, 7, 7))
    weight = rng.normal(size=(3, 2, 3, 3))
    bias = rng.normal(size=3)
    out, cache = conv2d_forward(x, weight, bias, stride)
    dout = rng.normal(size=out.shape)

    dx, dweight, dbias = conv2d_backward(dout, weight, cache)

    def loss_x(value):
        return float(np.sum(conv2d_forward(value, weight, bias, stride)[0] * dout))

    def loss_w(value):
        return float(np.sum(conv2d_forward(x, value, bias, stride)[0] * dout))

    def loss_b(value):
        return float(np.sum(conv2d_forward(x, weight, value, stride)[0] * dout))

    assert np.allclose(dx, central_difference(loss_x, x.copy(), 1e-6), atol=1e-6)
    assert np.allclose(dweight, central_difference(loss_w, weight.copy(), 1e-6), atol=1e-6)
    assert np.allclose(dbias, central_difference(loss_b, bias.copy(), 1e-6), atol=1e-6)


def test_conv_backward_can_skip_input_gradient(rng):
    x = rng.normal(size=(1, 1, 5, 5))
    weight = rng.normal(size=(2, 1, 3, 3))
    out, cache = conv2d_forward(x, weight, np.zeros(2), 1)

    dx, dweight, _ = conv2d_backward(np.ones_like(out), weight, cache, need_input_grad=False)

    assert dx is None
    assert dweight.shape == weight.shape


def test_dense_backward_matches_finite_differences(rng):
    x = rng.normal(size=(4, 3))
    weight = rng.normal(size=(2, 3))
    bias = rng.normal(size=2)
    dy = rng.normal(size=(4, 2))

    dx, dweight, dbias = dense_backward(dy, x, weight)

    assert np.allclose(dx, central_difference(lambda v: float(np.sum(dense_forward(v, weight, bias) * dy)), x, 1e-6))
    assert np.allclose(
        dweight, central_difference(lambda v: float(np.sum(dense_forward(x, v, bias) * dy)), weight, 1e-6),
    )
    assert np.allclose(dbias, dy.sum(axis=0))


def test_relu():
    x = np.array([-1.0, 0.0, 2.0])
    y = relu_forward(x)

    assert y.tolist() == [0.0, 0.0, 2.0]
    assert relu_backward(np.array([5.0, 5.0, 5.0]), y).tolist() == [0.0, 0.0, 5.0]
