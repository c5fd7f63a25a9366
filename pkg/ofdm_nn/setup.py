"""
Setup for ofdm_nn
"""
from setuptools import setup

package_name = 'ofdm_nn'
setup(
    name=package_name,
    version='0.1.0',
    packages=[package_name],
    install_requires=['setuptools', 'numpy', 'ofdm_common'],
    zip_safe=True,
    maintainer='OFDM Channel Estimation Team',
    maintainer_email='ofdm-chest@users.noreply.github.com',
    description='Small reverse-mode autodiff library with the layers the channel estimators need',
    license='MIT',
    tests_require=['pytest'],
    package_dir={'': 'src'},
)
