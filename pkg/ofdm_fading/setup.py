"""
Setup for ofdm_fading
"""
from setuptools import setup

package_name = 'ofdm_fading'
setup(
    name=package_name,
    version='0.1.0',
    packages=[package_name],
    install_requires=['setuptools', 'numpy', 'scipy', 'ofdm_common'],
    zip_safe=True,
    maintainer='OFDM Channel Estimation Team',
    maintainer_email='ofdm-chest@users.noreply.github.com',
    description='Rayleigh multipath fading channels with Jakes Doppler and tap-delay-line profiles',
    license='MIT',
    tests_require=['pytest'],
    package_dir={'': 'src'},
    data_files=[
        ('share/' + package_name + '/config', ['config/profiles.yaml'])
    ],
)
