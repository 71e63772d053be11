GAUSSIAN = "gaussian"
CORRELATED = "correlated"

SAMPLERS = (GAUSSIAN, CORRELATED)
