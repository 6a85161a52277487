"""Reference Shapiro-Wilk W values for the samples written by
dump_normality_samples. Usage: python3 shapiro_reference.py SAMPLE_DIR"""
import pathlib
import sys

import numpy as np
from scipy import stats

NAMES = [
    "normal_20", "normal_200", "normal_5000",
    "exponential_20", "exponential_200", "exponential_5000",
    "uniform_20", "uniform_200", "uniform_5000",
    "lognormal_200",
]

root = pathlib.Path(sys.argv[1])
for name in NAMES:
    xs = np.loadtxt(root / f"{name}.txt")
    w, p = stats.shapiro(xs)
    print(f'{{"{name}", {w:.10f}}},')
