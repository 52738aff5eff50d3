"""
Checking published closed forms against brute force
====================================================

Several closed forms for the pair model are easy to mistype.  The
reconciliation report evaluates each literal form next to the brute-force
64-dimensional evolution and prints the deviations.
"""

import json

import numpy as np

from nuccr import pair as pm
from nuccr.dirac import PhysParams

params = PhysParams.from_ratios(1.0)
report = pm.reconciliation_report(params, np.linspace(0, 60, 121))
print(json.dumps(report, indent=2))
