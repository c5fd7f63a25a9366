"""
Setup for ofdm_channelformer
"""
from setuptools import setup

package_name = 'ofdm_channelformer'
setup(
    name=package_name,
    version='0.1.0',
    packages=[package_name],
    install_requires=[
        'setuptools',
        'numpy',
        'ofdm_common',
        'ofdm_nn',
        'ofdm_link',
        'ofdm_estimators'
    ],
    zip_safe=True,
    maintainer='OFDM Channel Estimation Team',
    maintainer_email='ofdm-chest@users.noreply.github.com',
    description='Attention encoder and convolutional decoder for pilot based channel estimation',
    license='MIT',
    tests_require=['pytest'],
    package_dir={'': 'src'},
)
