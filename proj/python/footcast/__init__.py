"""Football score forecasting with nested zero-inflated generalized Poisson
regression, Elo-based covariates and Monte Carlo tournament simulation."""

try:
    from footcast import _core  # installed wheel layout
except ImportError:  # build-tree layout: extension sits on sys.path directly
    import _core

GOAL_CAP = _core.GOAL_CAP
BivPoissonParams = _core.BivPoissonParams
ConfigError = _core.ConfigError
DataError = _core.DataError
DomainError = _core.DomainError
FitError = _core.FitError
TeamModel = _core.TeamModel
ZigpParams = _core.ZigpParams
bivpois_pmf = _core.bivpois_pmf
date_weight = _core.date_weight
elo_update = _core.elo_update
expected_result = _core.expected_result
fit_teams_csv = _core.fit_teams_csv
goal_multiplier = _core.goal_multiplier
importance_weight = _core.importance_weight
load_models = _core.load_models
predict_match = _core.predict_match
simulate_tournament = _core.simulate_tournament
zigp_mean_var = _core.zigp_mean_var
zigp_pmf = _core.zigp_pmf

__all__ = [
    "GOAL_CAP",
    "BivPoissonParams",
    "ConfigError",
    "DataError",
    "DomainError",
    "FitError",
    "TeamModel",
    "ZigpParams",
    "bivpois_pmf",
    "date_weight",
    "elo_update",
    "expected_result",
    "fit_teams_csv",
    "goal_multiplier",
    "importance_weight",
    "load_models",
    "predict_match",
    "simulate_tournament",
    "zigp_mean_var",
    "zigp_pmf",
]
