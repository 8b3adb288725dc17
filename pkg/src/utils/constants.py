"""
Shared constants for the load event toolkit
"""

# WAMMA defaults
TREND_MAJORITY = 0.60       # sign majority must strictly exceed this
STD_FACTOR = 0.20           # threshold follows 20% of steady-state std
MACRO_ATTEMPT_LIMIT = 32    # one-margin lookaheads per window
MIN_MARGIN_SAMPLES = 2

# Reconstruction
REDRAW_LIMIT = 100          # truncated-Gaussian redraws per signature

# Signatures
MERGE_TOL_FACTOR = 2.0      # steady-state clustering tolerance, in units of p_thre
DENSITY_FLOOR = 1e-12       # std below this is treated as an exact-match layer

# Tree document
TREE_FORMAT_TAG = "load-signature-tree/1"
TREE_LAYERS = ("root", "form", "dts", "trs", "dsp", "tdt", "label", "ssp", "std")

# File formats
EVENTS_HEADER = ["start_time", "spike_time", "end_time", "direction",
                 "pre_mean", "post_mean", "provenance"]
TRUTH_HEADER = ["time", "label"]
DECIMALS = 6                # printed precision of every CSV float
RATE_SPACING_TOLERANCE = 0.01  # timestamps within 1% of 1/rate

# Reporting
PERCENT_DECIMALS = 1
METRIC_COLUMNS = ["TPP", "FPP", "FNP", "f1"]
