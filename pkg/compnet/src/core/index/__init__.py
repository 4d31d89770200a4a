from compnet.src.core.index.catalog \
    import (list_examples,
            exists_in_index,
            lookup_example_path,
            EXAMPLES_PATH)

__all__ = ['list_examples',
           'exists_in_index',
           'lookup_example_path',
           'EXAMPLES_PATH']
