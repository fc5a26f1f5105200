"""
Checks that the solution satisfies the ODE, its initial data and the
integral identities
"""
import math

from volterraheat.checks.base import Check, CheckContext, CheckOption


def _growth(context: CheckContext, power: int) -> float:
    return (1.0 + abs(context.lam)) ** power


class OdeResidualCheck(Check):
    id = "ode-residual"
    name = "ODE residual"
    description = "Scaled residual of the third-order ODE on a log-spaced grid"
    category = "equivalence"
    measurement = "ode_residual_sup"
    options = {
        "tolerance": CheckOption("tolerance", "Bound for the scaled residual", 1e-8),
    }

    def bound(self, context: CheckContext) -> float:
        return self.get_option("tolerance")


class InitialValueCheck(Check):
    id = "initial-value"
    name = "Initial value"
    description = "y(0) = 1 exactly"
    category = "equivalence"
    measurement = "ic_y0_error"
    options = {
        "tolerance": CheckOption("tolerance", "Bound for |y(0) - 1|", 0.0),
    }

    def bound(self, context: CheckContext) -> float:
        return self.get_option("tolerance")


class InitialSlopeCheck(Check):
    id = "initial-slope"
    name = "Initial slope"
    description = "y'(t0) behaves like -(2 lambda / sqrt(pi)) sqrt(t0) near 0"
    category = "equivalence"
    measurement = "ic_dy0_error"
    options = {
        "factor": CheckOption("factor", "Multiple of |lambda| sqrt(t0)", 3.0),
        "probe": CheckOption("probe", "Probe time t0", 1e-6),
    }

    def bound(self, context: CheckContext) -> float:
        return self.get_option("factor") * abs(context.lam) * math.sqrt(self.get_option("probe"))


class InitialCurvatureCheck(Check):
    id = "initial-curvature"
    name = "Initial curvature"
    description = "Regular part y'' + lambda / sqrt(pi t) extrapolates to 0"
    category = "equivalence"
    measurement = "d2y0_error"
    options = {
        "tolerance": CheckOption("tolerance", "Bound per (1 + |lambda|)^3", 1e-8),
    }

    def bound(self, context: CheckContext) -> float:
        return self.get_option("tolerance") * _growth(context, 3)


class IntegralBoundaryCheck(Check):
    id = "integral-bc"
    name = "Integral boundary condition"
    description = "y''(1) = -lambda / sqrt(pi) + lambda^2 int_0^1 y"
    category = "equivalence"
    measurement = "integral_bc_error"
    options = {
        "tolerance": CheckOption("tolerance", "Bound per (1 + |lambda|)^3", 1e-7),
    }

    def bound(self, context: CheckContext) -> float:
        return self.get_option("tolerance") * _growth(context, 3)


class FirstDerivativeIdentityCheck(Check):
    id = "first-derivative-identity"
    name = "First derivative identity"
    description = "y' = lambda^2 int y(tau)(t - tau) dtau - 2 lambda sqrt(t / pi)"
    category = "equivalence"
    measurement = "first_identity_sup_error"
    options = {
        "tolerance": CheckOption("tolerance", "Bound per (1 + |lambda|)^3", 1e-6),
    }

    def bound(self, context: CheckContext) -> float:
        return self.get_option("tolerance") * _growth(context, 3)


class SecondDerivativeIdentityCheck(Check):
    id = "second-derivative-identity"
    name = "Second derivative identity"
    description = "y'' = -lambda / sqrt(pi t) + lambda^2 int_0^t y"
    category = "equivalence"
    measurement = "second_identity_sup_error"
    options = {
        "tolerance": CheckOption("tolerance", "Bound per (1 + |lambda|)^3", 1e-6),
    }

    def bound(self, context: CheckContext) -> float:
        return self.get_option("tolerance") * _growth(context, 3)


class VolterraResidualCheck(Check):
    id = "volterra-residual"
    name = "Volterra residual"
    description = "Integral equation residual of the series solution on the grid"
    category = "equivalence"
    measurement = "volterra_residual_sup"
    options = {
        "factor": CheckOption("factor", "Multiple of dt^2 (1 + |lambda|)^2", 5.0),
    }

    def bound(self, context: CheckContext) -> float:
        return self.get_option("factor") * context.dt ** 2 * _growth(context, 2)


class MarchingIdentityCheck(Check):
    id = "marching-identity"
    name = "Marching identity"
    description = "Integrated ODE form of the marching solution"
    category = "equivalence"
    measurement = "marching_residual_sup"
    options = {
        "factor": CheckOption("factor", "Multiple of dt^2 (1 + |lambda|)^3", 10.0),
    }

    def bound(self, context: CheckContext) -> float:
        return self.get_option("factor") * context.dt ** 2 * _growth(context, 3)
