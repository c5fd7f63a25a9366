"""
Setup for ofdm_common
"""
from setuptools import setup

package_name = 'ofdm_common'
setup(
    name=package_name,
    version='0.1.0',
    packages=[package_name],
    install_requires=['setuptools', 'numpy', 'PyYAML', 'pandas'],
    zip_safe=True,
    maintainer='OFDM Channel Estimation Team',
    maintainer_email='ofdm-chest@users.noreply.github.com',
    description='Logging, configuration, seeding and file helpers shared by the ofdm packages',
    license='MIT',
    tests_require=['pytest'],
    package_dir={'': 'src'},
)
