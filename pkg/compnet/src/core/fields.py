"""Field names for compnet documents and records"""


class Rational:
    """Wire format for exact rationals"""
    SEPARATOR = '/'


class Network:
    """Headers for network documents"""
    ARCHITECTURE = 'architecture'
    LAYERS = 'layers'
    WEIGHTS = 'A'
    BIAS = 'b'
    ACTIVATION = 'activation'


class Dataset:
    """Headers for Dataset"""
    DIMENSION = 'd'
    PAIRS = 'pairs'
    INPUT = 'x'
    LABEL = 'y'


class Cursor:
    """Headers for EnumerationCursor checkpoints"""
    ARCHITECTURE = 'architecture'
    MODE = 'mode'
    SHELL_INDEX = 'shell_index'
    POSITION_IN_SHELL = 'position_in_shell'


class LearnerConfig:
    """Headers for LearnerConfig"""
    EPSILON = 'epsilon'
    A_MAX = 'a_max'
    MAX_STEPS = 'max_steps'
    ACTIVATION = 'activation'
    ADMISSIBLE_ONLY = 'admissible_only'


class LearnReport:
    """Headers for LearnReport"""
    LEARNED = 'learned'
    STEPS = 'steps'
    EPSILON = 'epsilon'
    PSI_RADIUS = 'psi_radius'
    BUDGET_EXHAUSTED = 'budget_exhausted'
    MODE = 'mode'


class BallUnion:
    """Headers for ball union documents"""
    BALLS = 'balls'
    CENTER = 'c'
    RADIUS = 'r'


class ClassVerdict:
    """Headers for ClassVerdict"""
    VERDICT = 'verdict'
    CLASS_INDEX = 'class_index'
    FUEL_USED = 'fuel_used'


class SeparationReport:
    """Headers for SeparationReport"""
    MIN_DISTANCE_SQUARED = 'min_distance_squared'
    CLOSEST_PAIR = 'closest_pair'
    THRESHOLD = 'threshold'
    BELOW_THRESHOLD = 'below_threshold'


class Spike:
    """Headers for SpikeFamilyMember and topology table rows"""
    K = 'k'
    NETWORK = 'network'
    EXACT_SUP = 'exact_sup'
    EXACT_LIP = 'exact_lip'
    SUP_NORM = 'sup_norm'
    LIPSCHITZ = 'lipschitz'
    SCALING_LOWER_BOUND = 'scaling_lower_bound'
    DECIMAL = 'decimal'


class Manifest:
    """Headers for RunManifest"""
    COMMAND = 'command'
    CONFIGURATION = 'configuration'
    INPUT_DIGESTS = 'input_digests'
    OUTPUTS = 'outputs'
    DURATION = 'duration_seconds'
