"""Frozen coefficient tables for the Faddeyeva evaluator.

Generated by tools/calibrate_faddeyeva.py with 50-digit arithmetic,
then rounded to double precision.  Do not edit by hand.
"""

import numpy as np

# Rational-approximation constant L and polynomial coefficients
# (highest degree first) after the Moebius map Z = (L + iz)/(L - iz),
# following J.A.C. Weideman, SIAM J. Numer. Anal. 31, 1497 (1994).
WEIDEMAN_L = 6.727171322029716
WEIDEMAN_COEF = np.array([
    np.float64(1.0625704737059244e-25),
    np.float64(-3.898602520204239e-24),
    np.float64(-7.484637169248438e-25),
    np.float64(2.3168416601698317e-23),
    np.float64(7.32144726641639e-24),
    np.float64(-1.394130892737621e-22),
    np.float64(-7.537122943132364e-23),
    np.float64(8.42888248582555e-22),
    np.float64(7.433530541080805e-22),
    np.float64(-5.0471304131517485e-21),
    np.float64(-6.940136829850447e-21),
    np.float64(2.9174379786718096e-20),
    np.float64(6.149871930842994e-20),
    np.float64(-1.5472486941171385e-19),
    np.float64(-5.169096040481817e-19),
    np.float64(6.574531101955934e-19),
    np.float64(4.08234842655728e-18),
    np.float64(-8.880797783194235e-19),
    np.float64(-2.95525501907965e-17),
    np.float64(-2.4968655020769235e-17),
    np.float64(1.8477915085919803e-16),
    np.float64(4.1064650026220555e-16),
    np.float64(-8.280264038694036e-16),
    np.float64(-4.275539258001627e-15),
    np.float64(-1.8642615086864697e-16),
    np.float64(3.2958274392640907e-14),
    np.float64(5.907593814636791e-14),
    np.float64(-1.5478473543021312e-13),
    np.float64(-7.920276268418266e-13),
    np.float64(-3.939378486675605e-13),
    np.float64(5.832530451810028e-12),
    np.float64(1.7501500704141682e-11),
    np.float64(-6.470682197000131e-12),
    np.float64(-1.7560603223913899e-10),
    np.float64(-4.5339144965634184e-10),
    np.float64(2.443478742000767e-10),
    np.float64(5.186955729352611e-09),
    np.float64(1.5926813922559445e-08),
    np.float64(7.435710778898551e-09),
    np.float64(-1.3610261241789774e-07),
    np.float64(-6.650424120602941e-07),
    np.float64(-1.5547722781997578e-06),
    np.float64(-7.564244109515164e-08),
    np.float64(1.7901801586126486e-05),
    np.float64(0.0001022700679891566),
    np.float64(0.00039627451039808795),
    np.float64(0.0012549788049982824),
    np.float64(0.0034602079481074717),
    np.float64(0.008565381413175881),
    np.float64(0.019380399024538288),
    np.float64(0.04055284652958028),
    np.float64(0.07911655067602581),
    np.float64(0.1447785997358642),
    np.float64(0.24963969994535568),
    np.float64(0.4070443030398737),
    np.float64(0.6293868343374368),
    np.float64(0.9249760252638087),
    np.float64(1.2944377517175163),
    np.float64(1.7275060857871172),
    np.float64(2.20125657128641),
    np.float64(2.680732639559084),
    np.float64(3.1224481894020366),
    np.float64(3.4804961039850415),
    np.float64(3.7141697931977022),
])

# 1/Gamma(k/2 + 1) for the Maclaurin series of w(z), k = 0..55.
SERIES_COEF = np.array([
    1.0,
    1.1283791670955126,
    1.0,
    0.7522527780636751,
    0.5,
    0.30090111122547003,
    0.16666666666666666,
    0.08597174606442,
    0.041666666666666664,
    0.01910483245876,
    0.008333333333333333,
    0.0034736059015927274,
    0.001388888888888889,
    0.0005344009079373427,
    0.0001984126984126984,
    7.125345439164569e-05,
    2.48015873015873e-05,
    8.38275934019361e-06,
    2.7557319223985893e-06,
    8.823957200203801e-07,
    2.755731922398589e-07,
    8.403768762098858e-08,
    2.505210838544172e-08,
    7.307625010520746e-09,
    2.08767569878681e-09,
    5.846100008416597e-10,
    1.6059043836821613e-10,
    4.330444450678961e-11,
    1.1470745597729725e-11,
    2.986513414261352e-12,
    7.647163731819816e-13,
    1.9267828479105497e-13,
    4.779477332387385e-14,
    1.1677471805518484e-14,
    2.8114572543455206e-15,
    6.672841031724848e-16,
    1.5619206968586225e-16,
    3.606941098229647e-17,
    8.22063524662433e-18,
    1.8497133837075115e-18,
    4.110317623312165e-19,
    9.022992115646397e-20,
    1.9572941063391263e-20,
    4.196740518905301e-21,
    8.896791392450574e-22,
    1.8652180084023562e-22,
    3.868170170630684e-23,
    7.937097908095133e-24,
    1.6117375710961184e-24,
    3.239631799222503e-25,
    6.446950284384474e-26,
    1.2704438428323542e-26,
    2.4795962632247976e-27,
    4.794127708801336e-28,
    9.183689863795546e-29,
    1.7433191668368497e-29,
])
