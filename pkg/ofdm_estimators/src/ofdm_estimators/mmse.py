#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Frequency-domain linear MMSE estimators and the Wiener smoother
"""

import numpy as np
from scipy import linalg

from ofdm_common.exceptions import ShapeError
from ofdm_estimators.interpolation import linear_time_to_frame
from ofdm_estimators.ls import PilotEstimate, MMSE
from ofdm_link.link import noise_variance


def mmse_matrix(R_hhp, R_hphp, noise_var):
    """
    W = R_hhp (R_hphp + sigma^2 I)^-1, pseudo-inverse when sigma^2 is zero

    :param R_hhp: cross correlation [N x P]
    :param R_hphp: pilot auto correlation [P x P], Hermitian
    :rtype: numpy.ndarray
    """
    R_hhp, R_hphp = np.asarray(R_hhp), np.asarray(R_hphp)
    if R_hphp.shape[0] != R_hphp.shape[1] or R_hhp.shape[1] != R_hphp.shape[0]:
        raise ShapeError("Correlations {} and {} do not conform".format(R_hhp.shape,
                                                                        R_hphp.shape))
    if noise_var <= 0:
        return R_hhp @ linalg.pinv(R_hphp)
    regularized = R_hphp + noise_var * np.eye(R_hphp.shape[0])
    # (A^-1 B^H)^H = B A^-1 for Hermitian A
    return linalg.solve(regularized, R_hhp.conj().T, assume_a='her').conj().T


def wiener_filter(R, noise_var):
    """
    Smoother F = R (R + sigma^2 I)^-1
    """
    return mmse_matrix(R, R, noise_var)


def apply_filter(W, values):
    """
    Apply W to the subcarrier axis -1 of values [..., P]
    """
    return np.asarray(values) @ W.T


def fd_mmse_1d(est, corr, snr, pattern):
    """
    Per pilot symbol MMSE from the comb LS estimate

    :type est: PilotEstimate
    :param corr: genie correlations
    :type corr: ofdm_estimators.genie.GenieCorrelations
    :param snr: SnrSpec or dB
    :return: estimates on the pilot symbols [..., 72, 2]
    """
    variance = noise_variance(snr)
    values = est.values if isinstance(est, PilotEstimate) else np.asarray(est)
    columns = []
    for j, symbol in enumerate(pattern.frame.pilot_symbols):
        W = mmse_matrix(corr.cross(symbol, pattern), corr.pilot_auto(symbol, pattern), variance)
        columns.append(apply_filter(W, values[..., j]))
    return np.stack(columns, axis=-1)


def fd_mmse_1d_frame(est, corr, snr, pattern):
    """
    1D FD-MMSE on the pilot symbols followed by linear time interpolation
    """
    return linear_time_to_frame(fd_mmse_1d(est, corr, snr, pattern), pattern.frame)


def fd_mmse_2d(Y, X, corr, snr, pattern):
    """
    MMSE on every symbol of the slot with that symbol's genie statistics

    Pilot symbols use their comb pilots exactly as fd_mmse_1d. Every other symbol
    uses the LS estimate Y / X over all subcarriers, X being known to the genie.

    :param Y: received grid [..., 72, 14]
    :param X: transmitted grid, same shape or broadcastable
    :return: [..., 72, 14]
    """
    Y, X = np.asarray(Y), np.asarray(X)
    variance = noise_variance(snr)
    frame = pattern.frame
    H_hat = np.zeros(np.broadcast(Y, X).shape, dtype=np.complex128)
    for symbol in range(frame.num_symbols):
        if symbol in frame.pilot_symbols:
            carriers = pattern.pilot_subcarriers[symbol]
            ls = Y[..., carriers, symbol] / X[..., carriers, symbol]
            W = mmse_matrix(corr.cross(symbol, pattern), corr.pilot_auto(symbol, pattern),
                            variance)
        else:
            ls = Y[..., symbol] / X[..., symbol]
            R = corr.covariance(symbol)
            W = mmse_matrix(R, R, variance)
        H_hat[..., symbol] = apply_filter(W, ls)
    return H_hat
