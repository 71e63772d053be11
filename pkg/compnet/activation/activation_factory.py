from compnet.activation import IDENTITY, LOGISTIC, TANH, SCALED_LOGISTIC
from compnet.activation.activation import Activation
from compnet.activation.identity_activation import IdentityActivation
from compnet.activation.logistic_activation import LogisticActivation
from compnet.activation.scaled_logistic_activation import ScaledLogisticActivation
from compnet.activation.tanh_activation import TanhActivation
from compnet.core.errors import InvalidProfileError


def activation_for(identifier: str) -> Activation:
    if identifier == IDENTITY:
        return IdentityActivation()
    elif identifier == LOGISTIC:
        return LogisticActivation()
    elif identifier == TANH:
        return TanhActivation()
    elif identifier == SCALED_LOGISTIC:
        return ScaledLogisticActivation()

    raise InvalidProfileError(f"Unsupported activation: {identifier}")
