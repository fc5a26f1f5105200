"""
Checks of the boundedness and parameter-dependence estimates
"""
from volterraheat import bounds
from volterraheat.checks.base import Check, CheckContext, CheckOption

_SLACK = CheckOption("slack", "Absolute slack added to the bound", 1e-9)


class GNormCheck(Check):
    id = "g-norm"
    name = "Solution norm"
    description = "max |g| <= 1 / (1 - epsilon)"
    category = "dependence"
    measurement = "g_norm_measured"
    options = {"slack": _SLACK}

    def bound(self, context: CheckContext) -> float:
        return bounds.g_norm_bound(context.epsilon) + self.get_option("slack")


class GLipschitzCheck(Check):
    id = "g-lipschitz"
    name = "Solution Lipschitz ratio"
    description = "max |g2 - g1| / |lambda2 - lambda1| <= (4 / (3 sqrt(pi))) T^(3/2) / (1 - epsilon)^2"
    category = "dependence"
    measurement = "g_lipschitz_measured"
    options = {"slack": _SLACK}

    def bound(self, context: CheckContext) -> float:
        return bounds.g_lipschitz_bound(context.epsilon, context.t_max) + self.get_option("slack")


class PotentialNormCheck(Check):
    id = "U-norm"
    name = "Potential norm"
    description = "max |U| <= 2 h0 sqrt(T) / (sqrt(pi) (1 - epsilon))"
    category = "dependence"
    measurement = "U_norm_measured"
    options = {"slack": _SLACK}

    def bound(self, context: CheckContext) -> float:
        return bounds.U_norm_bound(context.epsilon, context.t_max, context.h0) + self.get_option("slack")


class PotentialLipschitzCheck(Check):
    id = "U-lipschitz"
    name = "Potential Lipschitz ratio"
    description = "max |U2 - U1| / |lambda2 - lambda1| <= 8 h0 T^2 / (3 pi (1 - epsilon)^2)"
    category = "dependence"
    measurement = "U_lipschitz_measured"
    options = {"slack": _SLACK}

    def bound(self, context: CheckContext) -> float:
        return bounds.U_lipschitz_bound(context.epsilon, context.t_max, context.h0) + self.get_option("slack")


class TemperatureNormCheck(Check):
    id = "u-norm"
    name = "Temperature norm"
    description = "max |u| <= h0 (1 + 3 epsilon / (2 (1 - epsilon)))"
    category = "dependence"
    measurement = "u_norm_measured"
    options = {"slack": _SLACK}

    def bound(self, context: CheckContext) -> float:
        return bounds.u_norm_bound(context.epsilon, context.h0) + self.get_option("slack")


class TemperatureDeviationCheck(Check):
    id = "u-deviation"
    name = "Temperature deviation"
    description = "max |u - u0| / |lambda| <= (2 h0 / sqrt(pi)) T^(3/2) / (1 - epsilon)"
    category = "dependence"
    measurement = "u_dev_measured"
    options = {"slack": _SLACK}

    def bound(self, context: CheckContext) -> float:
        return bounds.u_dev_bound(context.epsilon, context.t_max, context.h0) + self.get_option("slack")


class TemperatureLipschitzCheck(Check):
    id = "u-lipschitz"
    name = "Temperature Lipschitz ratio"
    description = "max |u2 - u1| / |lambda2 - lambda1| against the stated temperature constant"
    category = "dependence"
    measurement = "u_lipschitz_measured"
    options = {"slack": _SLACK}

    def bound(self, context: CheckContext) -> float:
        return bounds.u_lipschitz_bound(context.epsilon, context.t_max, context.h0) + self.get_option("slack")
