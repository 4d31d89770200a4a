"""Module for certified computation with exact-parameter networks"""
from compnet.src.core import (exact_real, network, enumeration, learners,
                              classify, topology_demo)

from compnet.src.core.index import lookup_example_path

from compnet.src.core.exact_real \
    import (CReal,
            CRealVector,
            creal_from_rational,
            creal_vector_from_rationals,
            creal_add,
            creal_sub,
            creal_mul,
            creal_neg,
            creal_abs,
            creal_compare,
            creal_sqrt,
            creal_pi,
            creal_arctan)
from compnet.src.core.network \
    import (Architecture,
            Activation,
            Network,
            Dataset,
            get_activation,
            realize,
            realize_creal,
            scaling_norm,
            lipschitz_bound,
            sample_generalization_ball,
            make_dataset)
from compnet.src.core.enumeration \
    import (EnumerationCursor,
            next_network,
            iterate_networks,
            godel_encode,
            godel_decode)
from compnet.src.core.learners \
    import (LearnerConfig,
            LearnReport,
            enum_learn,
            lipschitz_enum_learn,
            make_encoded_dataset,
            quantized_learn_encode,
            quantized_enum_learn,
            learn_many)
from compnet.src.core.classify \
    import (SemiDecider,
            BallUnion,
            ball_union_semidecider,
            dovetail_classify,
            exit_flag_semidecider,
            compile_finite_classifier,
            class_separation_audit)
from compnet.src.core.topology_demo \
    import (SpikeFamilyMember,
            build_spike,
            scaling_norm_lower_bound)
from compnet.src.core.util import Text
from compnet.src.core.option import (Verdict, Mode, LearnMode, ExitCode)

from compnet.src.core.error \
    import (ShapeMismatchError,
            InexactActivationError,
            InconsistentDataError,
            BudgetExhaustedError,
            DecodeError,
            AmbiguousAcceptError,
            DuplicateKeyError,
            DomainError,
            InsufficientClassesError)

__all__ = ['exact_real',
           'network',
           'enumeration',
           'learners',
           'classify',
           'topology_demo',
           'lookup_example_path',
           'CReal',
           'CRealVector',
           'creal_from_rational',
           'creal_vector_from_rationals',
           'creal_add',
           'creal_sub',
           'creal_mul',
           'creal_neg',
           'creal_abs',
           'creal_compare',
           'creal_sqrt',
           'creal_pi',
           'creal_arctan',
           'Architecture',
           'Activation',
           'Network',
           'Dataset',
           'get_activation',
           'realize',
           'realize_creal',
           'scaling_norm',
           'lipschitz_bound',
           'sample_generalization_ball',
           'make_dataset',
           'EnumerationCursor',
           'next_network',
           'iterate_networks',
           'godel_encode',
           'godel_decode',
           'LearnerConfig',
           'LearnReport',
           'enum_learn',
           'lipschitz_enum_learn',
           'make_encoded_dataset',
           'quantized_learn_encode',
           'quantized_enum_learn',
           'learn_many',
           'SemiDecider',
           'BallUnion',
           'ball_union_semidecider',
           'dovetail_classify',
           'exit_flag_semidecider',
           'compile_finite_classifier',
           'class_separation_audit',
           'SpikeFamilyMember',
           'build_spike',
           'scaling_norm_lower_bound',
           'Text',
           'Verdict',
           'Mode',
           'LearnMode',
           'ExitCode',
           'ShapeMismatchError',
           'InexactActivationError',
           'InconsistentDataError',
           'BudgetExhaustedError',
           'DecodeError',
           'AmbiguousAcceptError',
           'DuplicateKeyError',
           'DomainError',
           'InsufficientClassesError']
