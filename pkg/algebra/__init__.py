# Núcleo matemático: cuerpos finitos, presentaciones, retículo, enumeración,
# par de torsión, series graduadas y polinomios de Kac.
