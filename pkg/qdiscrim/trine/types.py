import numpy as np

ComplexArray = np.ndarray
RealArray = np.ndarray
Scalar = complex | float | int
ComplexJSON = dict[str, float]
