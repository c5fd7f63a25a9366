"""
Setup for ofdm_link
"""
from setuptools import setup

package_name = 'ofdm_link'
setup(
    name=package_name,
    version='0.1.0',
    packages=[package_name],
    install_requires=['setuptools', 'numpy', 'ofdm_common', 'ofdm_fading'],
    zip_safe=True,
    maintainer='OFDM Channel Estimation Team',
    maintainer_email='ofdm-chest@users.noreply.github.com',
    description='QPSK/OFDM slot transceiver with single and double symbol DM-RS pilot patterns',
    license='MIT',
    tests_require=['pytest'],
    package_dir={'': 'src'},
)
