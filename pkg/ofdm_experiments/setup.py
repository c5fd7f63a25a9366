"""
Setup for ofdm_experiments
"""
from setuptools import setup

package_name = 'ofdm_experiments'
setup(
    name=package_name,
    version='0.1.0',
    packages=[package_name],
    install_requires=[
        'setuptools',
        'numpy',
        'pandas',
        'PyYAML',
        'ofdm_common',
        'ofdm_fading',
        'ofdm_link',
        'ofdm_estimators',
        'ofdm_channelformer',
        'ofdm_training',
        'ofdm_pruning'
    ],
    zip_safe=True,
    maintainer='OFDM Channel Estimation Team',
    maintainer_email='ofdm-chest@users.noreply.github.com',
    description='Metrics, Monte-Carlo sweeps, online adaptation and the ofdm-chest command',
    license='MIT',
    tests_require=['pytest'],
    package_dir={'': 'src'},
    data_files=[
        ('share/' + package_name + '/config', ['config/settings.yaml'])
    ],
    entry_points={
        'console_scripts': [
            'ofdm-chest = ofdm_experiments.cli:main'
        ],
    },
)
