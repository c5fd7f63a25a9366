"""
Setup for ofdm_estimators
"""
from setuptools import setup

package_name = 'ofdm_estimators'
setup(
    name=package_name,
    version='0.1.0',
    packages=[package_name],
    install_requires=[
        'setuptools',
        'numpy',
        'scipy',
        'ofdm_common',
        'ofdm_fading',
        'ofdm_link'
    ],
    zip_safe=True,
    maintainer='OFDM Channel Estimation Team',
    maintainer_email='ofdm-chest@users.noreply.github.com',
    description='Classical OFDM channel estimators: LS, interpolation, DD-CE, 1D and 2D FD-MMSE',
    license='MIT',
    tests_require=['pytest'],
    package_dir={'': 'src'},
)
