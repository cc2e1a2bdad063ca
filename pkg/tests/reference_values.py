"""Frozen reference values for the closed-form tests.

Produced once by ``tools/derive_reference_values.py`` with adaptive
``scipy.integrate.dblquad`` over the ellipse (absolute/relative tolerance
1e-13; polar coordinates centred at the evaluation point for the interior
log kernel) or with 50-digit ``mpmath`` arithmetic for the constants, and
``ELLIPSE_ENERGY_08_12`` with a lens-area reduction of the double integral.
None of that code is shared with the package.
"""

CAUCHY_08_12_AT_2 = 0.4581365520495949
CONV_CONJ_08_12_AT_2I = 0.5067494832004041j
Z_OVER_ZBAR2_08_12_AT_15_05 = -0.19786404164099672 - 0.23694410455691045j
GRAD_08_12_A05_AT_2_1 = -0.3182690654875122 - 0.30931941518575123j
LOGPOT_08_12_AT_01_01 = 0.4895833333333333
POT_08_12_A03_AT_2_M1 = -0.5852305292446596
C_ALPHA_05 = 0.71768093398975627849
MIN_ENERGY_05 = 0.48384046699487813924
ELLIPSE_ENERGY_08_12 = 0.4850000000000357

