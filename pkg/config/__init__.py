# Configuration package for the L-infinity verifier
