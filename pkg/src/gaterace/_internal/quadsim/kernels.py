import math

import numpy as np
from numba import njit

# Kernels avoid np.dot and the @ operator so they compile without a BLAS binding.


@njit(cache=True, nogil=True)
def rotation_from_quaternion(q, out):
    w, x, y, z = q[0], q[1], q[2], q[3]
    out[0, 0] = 1.0 - 2.0 * (y * y + z * z)
    out[0, 1] = 2.0 * (x * y - w * z)
    out[0, 2] = 2.0 * (x * z + w * y)
    out[1, 0] = 2.0 * (x * y + w * z)
    out[1, 1] = 1.0 - 2.0 * (x * x + z * z)
    out[1, 2] = 2.0 * (y * z - w * x)
    out[2, 0] = 2.0 * (x * z - w * y)
    out[2, 1] = 2.0 * (y * z + w * x)
    out[2, 2] = 1.0 - 2.0 * (x * x + y * y)


@njit(cache=True, nogil=True)
def gyroscopic_term(omega, inertia, out):
    """Writes omega x (J omega)"""
    jw0 = inertia[0, 0] * omega[0] + inertia[0, 1] * omega[1] + inertia[0, 2] * omega[2]
    jw1 = inertia[1, 0] * omega[0] + inertia[1, 1] * omega[1] + inertia[1, 2] * omega[2]
    jw2 = inertia[2, 0] * omega[0] + inertia[2, 1] * omega[1] + inertia[2, 2] * omega[2]
    out[0] = omega[1] * jw2 - omega[2] * jw1
    out[1] = omega[2] * jw0 - omega[0] * jw2
    out[2] = omega[0] * jw1 - omega[1] * jw0


@njit(cache=True, nogil=True)
def derivative_kernel(
    x, omega_ss,
    mass, inertia, inertia_inv, c_f, k_mot, allocation, k_v_lin, k_v_quad, gravity,
    out,
):
    rot = np.empty((3, 3))
    rotation_from_quaternion(x[3:7], rot)

    wrench = np.zeros(4)
    for i in range(4):
        thrust = c_f * x[13 + i] * x[13 + i]
        for r in range(4):
            wrench[r] += allocation[r, i] * thrust

    v_b = np.empty(3)
    for r in range(3):
        v_b[r] = rot[0, r] * x[7] + rot[1, r] * x[8] + rot[2, r] * x[9]
    speed = math.sqrt(v_b[0] * v_b[0] + v_b[1] * v_b[1] + v_b[2] * v_b[2])

    force_b = np.empty(3)
    for r in range(3):
        force_b[r] = -(k_v_lin[r] * v_b[r] + k_v_quad[r] * speed * v_b[r])
    force_b[2] += wrench[0]

    out[0] = x[7]
    out[1] = x[8]
    out[2] = x[9]

    w, qx, qy, qz = x[3], x[4], x[5], x[6]
    p, q, r = x[10], x[11], x[12]
    out[3] = 0.5 * (-qx * p - qy * q - qz * r)
    out[4] = 0.5 * (w * p + qy * r - qz * q)
    out[5] = 0.5 * (w * q - qx * r + qz * p)
    out[6] = 0.5 * (w * r + qx * q - qy * p)

    for row in range(3):
        acc = rot[row, 0] * force_b[0] + rot[row, 1] * force_b[1] + rot[row, 2] * force_b[2]
        out[7 + row] = acc / mass + gravity[row]

    gyro = np.empty(3)
    gyroscopic_term(x[10:13], inertia, gyro)
    net0 = wrench[1] - gyro[0]
    net1 = wrench[2] - gyro[1]
    net2 = wrench[3] - gyro[2]
    for row in range(3):
        out[10 + row] = inertia_inv[row, 0] * net0 + inertia_inv[row, 1] * net1 + inertia_inv[row, 2] * net2

    for i in range(4):
        out[13 + i] = (omega_ss[i] - x[13 + i]) / k_mot


@njit(cache=True, nogil=True)
def rk4_kernel(
    x, omega_ss, dt, substeps,
    mass, inertia, inertia_inv, c_f, k_mot, allocation, k_v_lin, k_v_quad, gravity,
    omega_min, omega_max,
):
    n = x.shape[0]
    h = dt / substeps
    cur = x.copy()
    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    tmp = np.empty(n)
    for _ in range(substeps):
        derivative_kernel(
            cur, omega_ss, mass, inertia, inertia_inv, c_f, k_mot, allocation, k_v_lin, k_v_quad, gravity, k1,
        )
        for i in range(n):
            tmp[i] = cur[i] + 0.5 * h * k1[i]
        derivative_kernel(
            tmp, omega_ss, mass, inertia, inertia_inv, c_f, k_mot, allocation, k_v_lin, k_v_quad, gravity, k2,
        )
        for i in range(n):
            tmp[i] = cur[i] + 0.5 * h * k2[i]
        derivative_kernel(
            tmp, omega_ss, mass, inertia, inertia_inv, c_f, k_mot, allocation, k_v_lin, k_v_quad, gravity, k3,
        )
        for i in range(n):
            tmp[i] = cur[i] + h * k3[i]
        derivative_kernel(
            tmp, omega_ss, mass, inertia, inertia_inv, c_f, k_mot, allocation, k_v_lin, k_v_quad, gravity, k4,
        )
        for i in range(n):
            cur[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])

        norm = math.sqrt(cur[3] * cur[3] + cur[4] * cur[4] + cur[5] * cur[5] + cur[6] * cur[6])
        for i in range(3, 7):
            cur[i] /= norm
        for i in range(13, 17):
            cur[i] = min(max(cur[i], omega_min), omega_max)
    return cur


@njit(cache=True, nogil=True)
def rate_control_kernel(
    omega_b, c, omega_ref,
    mass, inertia, allocation_inv, c_f, rate_gains, omega_min, omega_max,
    out,
):
    err = np.empty(3)
    for i in range(3):
        err[i] = rate_gains[i] * (omega_ref[i] - omega_b[i])

    gyro = np.empty(3)
    gyroscopic_term(omega_b, inertia, gyro)

    wrench = np.empty(4)
    wrench[0] = mass * c
    for row in range(3):
        wrench[1 + row] = (
            inertia[row, 0] * err[0] + inertia[row, 1] * err[1] + inertia[row, 2] * err[2] + gyro[row]
        )

    for i in range(4):
        thrust = 0.0
        for col in range(4):
            thrust += allocation_inv[i, col] * wrench[col]
        thrust = max(thrust, 0.0)
        out[i] = min(max(math.sqrt(thrust / c_f), omega_min), omega_max)
