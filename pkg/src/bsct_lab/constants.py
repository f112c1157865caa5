"""Unit conventions and physical constants.

Project-wide units: length in angstrom (A), energy in eV, force in eV/A,
time in fs, mass in amu, temperature in K.  Everything downstream assumes
these units; conversions happen only through the constants below.
"""

# Boltzmann constant, eV/K (CODATA 2018).
BOLTZMANN_EV_PER_K = 8.617333262e-5

# Kinetic-energy conversion: 1 amu * (A/fs)^2 in eV.
# Derivation: 1.66053906660e-27 kg * (1e-10 m / 1e-15 s)^2 / 1.602176634e-19 J/eV
KINETIC_EV_PER_AMU_ANG2_FS2 = 103.64269652680505

# Acceleration conversion: (eV/A) / amu -> A/fs^2 (reciprocal of the above,
# so that F*v*dt and 0.5*m*v^2 bookkeeping stays exactly consistent).
ACCEL_ANG_FS2_PER_EV_ANG_AMU = 1.0 / KINETIC_EV_PER_AMU_ANG2_FS2
