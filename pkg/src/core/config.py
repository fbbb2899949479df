"""
Configuration and fixed tables for the component-graph verification toolkit.
"""

def get_config():
    """Returns the current configuration settings."""
    return {
        'log_level': 'INFO',
        'log_file': 'component_graphs.log',
        'output_dir': './outputs',
        'max_workers': 4,
        'caps': dict(CAPS),
        'default_grid': {
            'q': list(DEFAULT_GRID['q']),
            'n': list(DEFAULT_GRID['n'])
        }
    }

# Supported field cardinalities: q -> (characteristic p, extension degree k)
SUPPORTED_FIELDS = {
    2: (2, 1),
    3: (3, 1),
    4: (2, 2),
    5: (5, 1),
    7: (7, 1),
    8: (2, 3),
    9: (3, 2),
    11: (11, 1),
    13: (13, 1),
    16: (2, 4),
    25: (5, 2),
    27: (3, 3),
}

# Monic irreducible polynomials over GF(p), coefficients low degree first
IRREDUCIBLE_POLYNOMIALS = {
    4: (1, 1, 1),        # x^2 + x + 1
    8: (1, 1, 0, 1),     # x^3 + x + 1
    9: (1, 0, 1),        # x^2 + 1
    16: (1, 1, 0, 0, 1), # x^4 + x + 1
    25: (2, 0, 1),       # x^2 + 2
    27: (1, 2, 0, 1),    # x^3 + 2x + 1
}

# Vertex caps for the exponential searches
CAPS = {
    'perfect': 64,       # twin kernel size for odd hole / antihole search
    'color': 64,         # kernel size for exact colouring and clique search
    'isomorphism': 512,  # vertices for backtracking isomorphism
}

DEFAULT_GRID = {
    'q': (2, 3),
    'n': (1, 2, 3, 4),
}

# Verification checks in report order
CHECK_IDS = (
    'igv',
    'ugv',
    'gamma-iso',
    'reduced',
    'boolean-compress',
    'chain-replace',
    'lemma22',
    'chordal-cor',
    'perfect-cor',
    'diameter',
    'weakly-perfect',
    'partition',
    'distributive',
    'annihilator',
    'remarks',
    'atom-criteria',
)

# Graph and poset objects the build command can emit
BUILD_KINDS = ('ig', 'ug', 'L', 'dualL', 'zdg-poset', 'ring-zdg', 'boolean-v')

OUTPUT_FORMATS = ('json', 'dot')

# Largest lattices in the chain replacement corpus and the chain lengths used
CHAIN_REPLACE_CORPUS = {
    'max_size': 6,
    'chain_lengths': (2, 3),
}

# Status strings carried by report entries
STATUS_PASS = 'PASS'
STATUS_FAIL = 'FAIL'
STATUS_SKIPPED = 'SKIPPED'

# Exit codes
EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
