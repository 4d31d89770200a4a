import setuptools

with open('./README.md', 'r') as readme_file:
    long_description = str(readme_file.read())

with open('./compnet/VERSION', 'r') as version_file:
    version = str(version_file.read())

with open('./requirements.txt', 'r') as require_file:
    requirements = list(require_file.readlines())

NAME = 'compnet'
DESCRIPTION = ('Computable reals, enumeration learners and semi-deciders '
               'for exact-parameter neural networks')
LISCENCE = 'GPL-3.0'
AUTHOR = 'z3c0'
AUTHOR_EMAIL = 'z3c0@21337.tech'
PYTHON_VERSION = '>=3.8'
GITHUB_URL = 'https://github.com/z3c0/compnet'

KEYWORDS = \
    ['computable', 'analysis', 'exact', 'real', 'arithmetic', 'rational',
     'neural', 'network', 'relu', 'enumeration', 'learning', 'quantized',
     'semi-decidable', 'classification', 'lipschitz', 'cantor', 'pairing']
CLASSIFIERS = \
    ['Development Status :: 4 - Beta',
     'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
     'Intended Audience :: Developers',
     'Intended Audience :: Science/Research',
     'Programming Language :: Python :: 3.8',
     'Topic :: Scientific/Engineering :: Mathematics',
     'Topic :: Scientific/Engineering :: Artificial Intelligence',
     'Topic :: Education']
EXTRAS = {'test': ['mpmath>=1.2.1', 'python-decouple>=3.4']}
ENTRY_POINTS = {'console_scripts': ['compnet = compnet.src.cli:main']}
PACKAGE_DATA = {'compnet': ['VERSION'],
                'compnet.src.core.index': ['examples/*.json']}

setup_kwargs = {'name': NAME,
                'author': AUTHOR,
                'author_email': AUTHOR_EMAIL,
                'packages': setuptools.find_packages(exclude=['tests']),
                'include_package_data': True,
                'package_data': PACKAGE_DATA,
                'version': version,
                'license': LISCENCE,
                'description': DESCRIPTION,
                'long_description': long_description,
                'long_description_content_type': 'text/markdown',
                'url': GITHUB_URL,
                'keywords': KEYWORDS,
                'classifiers': CLASSIFIERS,
                'python_requires': PYTHON_VERSION,
                'install_requires': requirements,
                'extras_require': EXTRAS,
                'entry_points': ENTRY_POINTS}

setuptools.setup(**setup_kwargs)
