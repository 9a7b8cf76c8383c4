"""
L-infinity Verifier Configuration
Caps, report and logging settings shared by the library and the CLI
"""

import os


class Config:
    """Configuration settings for the L-infinity verifier"""

    # Truncation caps. Every verdict is exact up to these bounds.
    CAPS = {
        'max_arity': 4,          # N: highest arity of multibracket components kept
        'max_weight': 6,         # W: highest total weight of Poisson monomials
        'factorial_limit': 12,   # arity caps above this are rejected
        'max_series_terms': 64   # guard for exponential and gauge series
    }

    # Shifted Poisson algebra settings
    POISSON = {
        'default_shift': 2,
        'pairing_sign': 1        # {xi_i, v_j} = pairing_sign * delta_ij
    }

    # Report settings
    REPORT = {
        'default_format': 'text',  # 'text' or 'json'
        'residual_limit': 20,      # residual entries listed per check
        'convention_version': 1
    }

    # Algebra document settings
    DOCUMENTS = {
        'format_version': 1,
        'directory': os.path.join(os.path.dirname(os.path.dirname(__file__)), 'documents'),
        'extension': '.alg'
    }

    # Property sampling
    RANDOM = {
        'seed': 20240607
    }

    # Logging Settings
    LOGGING = {
        'level': os.environ.get('LINFTY_LOG_LEVEL', 'WARNING'),
        'file_path': 'logs/linfty_verifier.log',
        'max_size_mb': 10,
        'backup_count': 5,
        'log_resources': True
    }
