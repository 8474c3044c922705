"""Frozen reference values. Generated by scripts/make_fixtures.py, do not edit."""

BESSEL_K0_ONE = 0.42102443824070834
BESSEL_K0_TWO_DOUBLED = 0.22778774549906688
DENSITY_INSIDE_B1_L1_X0P5 = 0.520350130672875
DENSITY_INSIDE_PARTIAL_N512_B1_L1_X0P5 = 0.5199544853400032
ERF_ONE = 0.8427007929497149
FLUX_INSIDE_B1_L1_X0P1 = 1.6551291643653843
FLUX_INSIDE_B1_L1_X0P3 = 0.4743699931711294
FLUX_INSIDE_B1_L1_X0P5 = 2.2526814660811844e-43
FLUX_OUTSIDE_B1_X_MINUS_HALF = 0.3044853195118359
FORCE_ABSORBING_B1_L0P5 = 0.6626065288654545
FORCE_ABSORBING_B1_L1 = 0.15809360163753122
FORCE_ABSORBING_B1_L2 = 0.008428432424856646
FORCE_REFLECTING_B0P5_L0P5 = 0.37754066879814546
FORCE_REFLECTING_B0P5_L1 = 0.2689414213699951
FORCE_REFLECTING_B0P5_L2 = 0.11920292202211756
FORCE_REFLECTING_B1_L0P5 = 0.4670276957593201
FORCE_REFLECTING_B1_L1 = 0.2765781953962737
FORCE_REFLECTING_B1_L2 = 0.07892332628110771
FORCE_REFLECTING_B2_L0P5 = 0.5378828427399902
FORCE_REFLECTING_B2_L1 = 0.23840584404423512
FORCE_REFLECTING_B2_L2 = 0.03597241992418312
HALF_GAUSSIAN_WEIGHTED = 0.3535533905932738
PARITY_MIDPOINT_B1_L2 = 0.4590981310854255
PARITY_OUTSIDE_B1_XM2_YM1 = 0.24964615498109832
RHO_OUTSIDE_B1_X_MINUS1 = 0.6902517580034528
THETA_ZERO_TAU_I = 1.086434811213308
