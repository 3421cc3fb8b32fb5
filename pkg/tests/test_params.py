import json

import numpy as np
import pytest

from antkinetics.params import (ParameterError, PhysicalParams, ScaledParams,
                                load_config, params_from_config,
                                rescale_physical, scaled_from_dict,
                                scaled_to_dict, validate)


def make_physical(**over):
    base = dict(v0=7.0, D_T_phys=1e-4, D_R=1.0, D=1.0, alpha_phys=1.0,
                eta=1.0, gamma_phys=300.0, lambda_phys=0.0, L_box=1.0, N=8)
    base.update(over)
    return PhysicalParams(**base)


def test_rescale_trajectory_figure_parameters():
    # D = D_R = eta = alpha = 1, v0 = 7, gamma = 300 maps to Pe = 7,
    # gamma_hat = 300 with everything else passing through
    s = rescale_physical(make_physical())
    assert s.Pe == pytest.approx(7.0)
    assert s.gamma == pytest.approx(300.0)
    assert s.D_T == pytest.approx(1e-4)
    assert s.alpha == pytest.approx(1.0)
    assert s.lambda_ == 0.0


def test_rescale_unit_parameters_fixed_point():
    s = rescale_physical(make_physical(v0=1.0, D_T_phys=1.0, gamma_phys=1.0,
                                       lambda_phys=1.0))
    assert (s.D_T, s.Pe, s.gamma, s.lambda_, s.alpha) == (1, 1, 1, 1, 1)


def test_rescale_lookahead_uses_screening_length():
    # lambda_hat = lambda/sqrt(D/D_R): 0.2/sqrt(4) = 0.1
    s = rescale_physical(make_physical(D=4.0, lambda_phys=0.2))
    assert s.lambda_ == pytest.approx(0.1, abs=1e-15)


def test_rescale_homogeneous_under_consistent_scaling():
    # changing the time unit (rates and diffusivities by k, v0 and gamma by
    # k) or the length unit (D, D_T by m^2; v0, gamma, lambda by m) must
    # leave all five dimensionless groups unchanged
    rng = np.random.default_rng(7)
    for _ in range(50):
        v0, dt, dr, d, al, eta, gam, lam = rng.uniform(0.1, 5.0, 8)
        p1 = make_physical(v0=v0, D_T_phys=dt, D_R=dr, D=d, alpha_phys=al,
                           eta=eta, gamma_phys=gam, lambda_phys=lam)
        k = rng.uniform(0.5, 2.0)
        p_time = make_physical(v0=v0 * k, D_T_phys=dt * k, D_R=dr * k,
                               D=d * k, alpha_phys=al * k, eta=eta * k,
                               gamma_phys=gam * k, lambda_phys=lam)
        m = rng.uniform(0.5, 2.0)
        p_len = make_physical(v0=v0 * m, D_T_phys=dt * m * m, D_R=dr,
                              D=d * m * m, alpha_phys=al, eta=eta,
                              gamma_phys=gam * m, lambda_phys=lam * m)
        s1 = scaled_to_dict(rescale_physical(p1))
        for p_other in (p_time, p_len):
            s2 = scaled_to_dict(rescale_physical(p_other))
            for key in s1:
                assert s1[key] == pytest.approx(s2[key], rel=1e-12)
        for v in s1.values():
            assert np.isfinite(v)


def test_validate_passes_figure_parameter_set():
    s = ScaledParams(D_T=0.01, Pe=3.5, gamma=325.0, lambda_=0.1, alpha=1.0)
    assert validate(s) is s


def test_validate_rejects_zero_dt():
    with pytest.raises(ParameterError, match="D_T"):
        ScaledParams(D_T=0.0, Pe=1.0, gamma=1.0, lambda_=0.0, alpha=1.0)


def test_validate_accepts_pure_diffusion():
    s = ScaledParams(D_T=0.5, Pe=0.0, gamma=0.0, lambda_=0.0, alpha=1.0)
    assert validate(s) is s


def test_physical_invariants():
    with pytest.raises(ParameterError):
        make_physical(D=0.0)
    with pytest.raises(ParameterError):
        make_physical(N=0)
    with pytest.raises(ParameterError):
        make_physical(lambda_phys=-0.1)


def test_config_round_trip(tmp_path):
    cfg = {"scaled": {"D_T": 0.01, "Pe": 3.5, "gamma": 325.0,
                      "lambda": 0.1, "alpha": 1.0}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    s = params_from_config(load_config(path))
    assert s == ScaledParams(0.01, 3.5, 325.0, 0.1, 1.0)


def test_config_requires_exactly_one_block():
    with pytest.raises(ParameterError):
        params_from_config({})
    with pytest.raises(ParameterError):
        params_from_config({"scaled": {}, "physical": {}})


def test_scaled_from_dict_rejects_unknown_keys():
    with pytest.raises(ParameterError, match="unknown"):
        scaled_from_dict({"D_T": 1, "Pe": 1, "gamma": 1, "lambda": 0,
                          "alpha": 1, "bogus": 2})
