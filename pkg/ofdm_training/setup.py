"""
Setup for ofdm_training
"""
from setuptools import setup

package_name = 'ofdm_training'
setup(
    name=package_name,
    version='0.1.0',
    packages=[package_name],
    install_requires=[
        'setuptools',
        'numpy',
        'pandas',
        'ofdm_common',
        'ofdm_nn',
        'ofdm_fading',
        'ofdm_link',
        'ofdm_estimators',
        'ofdm_channelformer'
    ],
    zip_safe=True,
    maintainer='OFDM Channel Estimation Team',
    maintainer_email='ofdm-chest@users.noreply.github.com',
    description='Dataset generation, offline and online training of channel estimation networks',
    license='MIT',
    tests_require=['pytest'],
    package_dir={'': 'src'},
)
