"""
Setup for ofdm_pruning
"""
from setuptools import setup

package_name = 'ofdm_pruning'
setup(
    name=package_name,
    version='0.1.0',
    packages=[package_name],
    install_requires=[
        'setuptools',
        'numpy',
        'ofdm_common',
        'ofdm_channelformer',
        'ofdm_training'
    ],
    zip_safe=True,
    maintainer='OFDM Channel Estimation Team',
    maintainer_email='ofdm-chest@users.noreply.github.com',
    description='Region-wise magnitude pruning and masked fine-tuning',
    license='MIT',
    tests_require=['pytest'],
    package_dir={'': 'src'},
)
