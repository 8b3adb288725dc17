"""
Shared fixtures: synthetic series builders and appliance signature sets
"""

import numpy as np
import pytest

from src.core.series import PowerSeries
from src.signatures.extractor import D_FORM, R_FORM, GaussianParam, SignatureSet


def steps_series(levels, lengths, rate=20.0):
    """Piecewise-constant series: levels[k] held for lengths[k] samples"""
    return PowerSeries(np.repeat(np.asarray(levels, dtype=float), lengths), rate)


def signature_set(form, dts, dsp, trs, tdt, ssp, std, label=(0, 1)):
    """SignatureSet from (mean, std) pairs"""
    return SignatureSet(
        form=form,
        alpha=GaussianParam(*dts),
        gamma=GaussianParam(*trs),
        beta=GaussianParam(*dsp),
        delta=GaussianParam(*tdt),
        transition_label=label,
        mu=GaussianParam(*ssp),
        tau=GaussianParam(*std),
    )


@pytest.fixture
def kettle():
    """Kettle turn-on signatures (R-form)"""
    return signature_set(R_FORM, dts=(1139, 9.8), dsp=(1138, 10.1), trs=(0.48, 0.28),
                         tdt=(0.48, 0.28), ssp=(1027, 5.2), std=(514, 43.2))


@pytest.fixture
def vacuum():
    """Vacuum turn-on signatures (D-form)"""
    return signature_set(D_FORM, dts=(2339, 71), dsp=(1101, 64), trs=(0.14, 0.1),
                         tdt=(1.14, 0.33), ssp=(1002, 22.1), std=(225, 16.5))


@pytest.fixture
def heater():
    """Short, exactly repeatable R-form appliance"""
    return signature_set(R_FORM, dts=(500, 0), dsp=(500, 0), trs=(0.2, 0),
                         tdt=(0.2, 0), ssp=(500, 0), std=(10, 0))
