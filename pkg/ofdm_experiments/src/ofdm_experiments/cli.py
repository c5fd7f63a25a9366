#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Command line entry point ofdm-chest

Every command writes its files into a temporary directory next to --out and
moves them into --out only when it succeeds.
"""

import argparse
import os
import shutil
import sys
import tempfile
from contextlib import contextmanager

from ofdm_common.config import config_hash, load_settings
from ofdm_common.exceptions import ConfigurationError, OfdmException
from ofdm_common.logging import configure, loginfo
from ofdm_common.tables import provenance, write_table
from ofdm_fading.fading import ChannelSpec
from ofdm_fading.profiles import available_profiles, resolve_profile

from ofdm_channelformer.complexity import layer_report, summary
from ofdm_channelformer.config import OFFLINE, ONLINE, ModelConfig
from ofdm_channelformer.model import build_for_mode
from ofdm_channelformer.weights_io import load_weights, save_weights
from ofdm_training.dataset import (
    DESK_SAMPLES, DOPPLER_RANGE_HZ, NOMINAL_SAMPLES, SNR_RANGE_DB, VALIDATION_FRACTION,
    generate_offline_dataset, read_dataset, write_dataset)
from ofdm_training.hyperparams import Hyperparams
from ofdm_training.trainer import train_offline
from ofdm_pruning.finetune import FINE_TUNE_SAMPLES, fine_tune
from ofdm_pruning.pruning import prune_by_magnitude

from ofdm_experiments.dynamic import DESK_BLOCK, NOMINAL_BLOCK
from ofdm_experiments.sweeps import (
    ATTENTION_PROBE, DYNAMIC_ADAPTATION, MSE_VS_SNR, SweepSpec, doppler_range, run_sweep)

PRUNE_REPORT_COLUMNS = ['region', 'target', 'pruned', 'size', 'achieved']
SUMMARY_COLUMNS = ['segment', 'profile', 'model', 'mean', 'settled', 'settled_stderr']
LAYER_COLUMNS = ['name', 'kind', 'params', 'macs']
SETTINGS_BLOCKS = ('dataset', 'hyperparams', 'fine_tune', 'pruning', 'online')


def weights_file_name(mode):
    return "channelformer_{}.cfw".format(mode)


@contextmanager
def staged_output(out):
    """
    Temporary sibling of out; its files move into out when the block succeeds
    """
    out = os.path.abspath(out)
    parent = os.path.dirname(out)
    if not os.path.isdir(parent):
        os.makedirs(parent)
    staging = tempfile.mkdtemp(prefix='.' + os.path.basename(out) + '.', dir=parent)
    try:
        yield staging
        if not os.path.isdir(out):
            os.makedirs(out)
        for name in sorted(os.listdir(staging)):
            target = os.path.join(out, name)
            if os.path.exists(target):
                os.remove(target)
            shutil.move(os.path.join(staging, name), target)
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def read_settings(args):
    """
    Settings of --config with relative file names resolved against its directory

    Without --config every value takes its default.
    """
    if args.config is None:
        return {}
    settings = load_settings(args.config)
    for key in SETTINGS_BLOCKS:
        if settings.get(key) is not None and not isinstance(settings[key], dict):
            raise ConfigurationError("'{}' must be a mapping, got {!r}".format(
                key, settings[key]))
    base = os.path.dirname(os.path.abspath(args.config))

    def resolve(path):
        return path if os.path.isabs(path) else os.path.normpath(os.path.join(base, path))

    weights = settings.get('weights') or {}
    if not isinstance(weights, dict):
        raise ConfigurationError("'weights' must map estimator names to files")
    settings['weights'] = dict((name, resolve(path)) for name, path in weights.items())
    for key in ('profile_file', 'cache_dir'):
        if settings.get(key):
            settings[key] = resolve(settings[key])
    return settings


def seed_of(args, settings):
    return args.seed if args.seed is not None else int(settings.get('seed', 0))


def result_provenance(settings, seed):
    return provenance(config_hash(settings), seed)


def channel_spec_of(settings, profile=None):
    pdp = resolve_profile(profile or settings.get('profile', 'ETU'), settings.get('profile_file'))
    return ChannelSpec(pdp, *doppler_range(settings.get('doppler_hz', DOPPLER_RANGE_HZ)))


def dataset_of(args, settings, seed, mode, default_count):
    if getattr(args, 'dataset', None):
        return read_dataset(args.dataset)
    block = settings.get('dataset', {}) or {}
    count = NOMINAL_SAMPLES if getattr(args, 'nominal', False) else block.get(
        'samples', default_count)
    snr_range = tuple(block.get('snr_db', SNR_RANGE_DB))
    return generate_offline_dataset(channel_spec_of(settings, block.get('profile')), count, mode,
                                    snr_range, seed, workers=settings.get('workers', 1))


def cmd_gen_dataset(args, settings, seed, out):
    mode = args.kind or (settings.get('dataset', {}) or {}).get('kind', OFFLINE)
    dataset = dataset_of(args, settings, seed, mode, DESK_SAMPLES)
    write_dataset(os.path.join(out, 'dataset_{}.bin'.format(mode)), dataset)


def cmd_train(args, settings, seed, out):
    mode = args.mode or (settings.get('dataset', {}) or {}).get('kind', OFFLINE)
    dataset = dataset_of(args, settings, seed, mode, DESK_SAMPLES)
    mode = dataset.kind
    hyperparams = Hyperparams.from_settings(settings.get('hyperparams'),
                                            Hyperparams.for_mode(mode, args.nominal))
    weights = build_for_mode(mode, seed)
    result = train_offline(weights, dataset, hyperparams, seed,
                           settings.get('validation_fraction', VALIDATION_FRACTION),
                           params=settings)
    save_weights(os.path.join(out, weights_file_name(mode)), result.weights)
    result.write_loss_curve(os.path.join(out, 'loss_curve_{}.csv'.format(mode)),
                            result_provenance(settings, seed))


def cmd_prune(args, settings, seed, out):
    ratio = args.ratio if args.ratio is not None else float(
        (settings.get('pruning', {}) or {}).get('ratio', 0.7))
    pruned, report = prune_by_magnitude(load_weights(args.weights), ratio)
    save_weights(os.path.join(out, 'pruned_{}'.format(os.path.basename(args.weights))), pruned)
    write_table(os.path.join(out, 'prune_report.csv'), report.rows(), PRUNE_REPORT_COLUMNS,
                result_provenance(settings, seed))


def cmd_finetune(args, settings, seed, out):
    weights = load_weights(args.weights)
    block = settings.get('pruning', {}) or {}
    dataset = dataset_of(args, settings, seed, weights.mode,
                         block.get('fine_tune_samples', FINE_TUNE_SAMPLES))
    hyperparams = Hyperparams.from_settings(settings.get('fine_tune'), Hyperparams.fine_tune())
    result = fine_tune(weights, dataset, hyperparams, seed, params=settings)
    save_weights(os.path.join(out, 'finetuned_{}'.format(os.path.basename(args.weights))),
                 result.weights)
    result.training.write_loss_curve(os.path.join(out, 'loss_curve_finetune.csv'),
                                     result_provenance(settings, seed))


def sweep_spec_of(args, settings, seed, kind=None):
    realizations = getattr(args, 'realizations', None)
    return SweepSpec.from_settings(settings, kind or getattr(args, 'experiment', None),
                                   realizations, seed)


def cmd_eval_sweep(args, settings, seed, out):
    if not args.experiment and not settings.get('experiment'):
        settings = dict(settings, experiment=MSE_VS_SNR)
    spec = sweep_spec_of(args, settings, seed)
    result = run_sweep(spec, params=settings)
    result.write(os.path.join(out, '{}.csv'.format(spec.kind)))


def cmd_online_sim(args, settings, seed, out):
    if args.nominal:
        settings = dict(settings, online=dict(settings.get('online') or {}, block=NOMINAL_BLOCK))
    elif not (settings.get('online') or {}).get('block'):
        settings = dict(settings, online=dict(settings.get('online') or {}, block=DESK_BLOCK))
    spec = sweep_spec_of(args, settings, seed, DYNAMIC_ADAPTATION)
    result = run_sweep(spec, params=settings)
    result.write(os.path.join(out, '{}.csv'.format(DYNAMIC_ADAPTATION)))
    rows = [(s.segment, s.profile, s.model, s.mean, s.settled, s.settled_stderr)
            for s in result.summaries]
    write_table(os.path.join(out, '{}_summary.csv'.format(DYNAMIC_ADAPTATION)), rows,
                SUMMARY_COLUMNS, result.provenance)


def cmd_probe_attention(args, settings, seed, out):
    spec = sweep_spec_of(args, settings, seed, ATTENTION_PROBE)
    result = run_sweep(spec, params=settings)
    result.write(os.path.join(out, '{}.csv'.format(ATTENTION_PROBE)))


def cmd_pdp_list(args, settings):
    profiles = available_profiles(settings.get('profile_file'), include_bundled=args.all)
    for profile in profiles.values():
        print("{} {} paths, max delay {:g} ns".format(profile.name, profile.num_paths,
                                                       profile.delays_ns[-1]))


def cmd_model_info(args, settings, seed, out):
    config = ModelConfig.for_mode(args.mode)
    totals = summary(config)
    print("{}: {} parameters, {} MACs, {} layers on the critical path".format(
        config.mode, totals['params'], totals['macs'], totals['critical_path_layers']))
    write_table(os.path.join(out, 'model_info_{}.csv'.format(config.mode)),
                layer_report(config), LAYER_COLUMNS, result_provenance(settings, seed))


class ChestArgumentParser(argparse.ArgumentParser):

    """
    Argument parser reporting usage errors as a single error line
    """

    def error(self, message):
        sys.stderr.write("error: ArgumentError: {}\n".format(message.replace("\n", " ")))
        sys.exit(2)


def add_run_arguments(parser):
    parser.add_argument('--config', help="YAML settings file")
    parser.add_argument('--seed', type=int, help="master seed, overrides the settings")
    parser.add_argument('--out', default='results', help="output directory")


def build_parser():
    parser = ChestArgumentParser(prog='ofdm-chest',
                                 description="OFDM channel estimation experiments")
    parser.add_argument('--quiet', action='store_true', help="only warnings and errors")
    parser.add_argument('--json-log', action='store_true', help="log JSON lines")
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    gen = commands.add_parser('gen-dataset', help="simulate a training dataset")
    add_run_arguments(gen)
    gen.add_argument('--kind', choices=[OFFLINE, ONLINE])
    gen.add_argument('--nominal', action='store_true', help="125000 samples")
    gen.set_defaults(handler=cmd_gen_dataset)

    train = commands.add_parser('train', help="train a network offline")
    add_run_arguments(train)
    train.add_argument('--dataset', help="dataset file, simulated when omitted")
    train.add_argument('--mode', choices=[OFFLINE, ONLINE])
    train.add_argument('--nominal', action='store_true', help="nominal epochs and samples")
    train.set_defaults(handler=cmd_train)

    prune = commands.add_parser('prune', help="magnitude-prune a trained network")
    add_run_arguments(prune)
    prune.add_argument('--weights', required=True)
    prune.add_argument('--ratio', type=float)
    prune.set_defaults(handler=cmd_prune)

    tune = commands.add_parser('finetune', help="fine-tune a pruned network")
    add_run_arguments(tune)
    tune.add_argument('--weights', required=True)
    tune.add_argument('--dataset', help="dataset file, simulated when omitted")
    tune.set_defaults(handler=cmd_finetune)

    sweep = commands.add_parser('eval-sweep', help="Monte-Carlo estimator comparison")
    add_run_arguments(sweep)
    sweep.add_argument('--experiment')
    sweep.add_argument('--realizations', type=int, help="slots per point, 5000 nominal")
    sweep.set_defaults(handler=cmd_eval_sweep)

    online = commands.add_parser('online-sim', help="online adaptation on switching profiles")
    add_run_arguments(online)
    online.add_argument('--nominal', action='store_true', help="10000 slots per segment")
    online.set_defaults(handler=cmd_online_sim)

    probe = commands.add_parser('probe-attention', help="attention magnitudes per head")
    add_run_arguments(probe)
    probe.add_argument('--realizations', type=int)
    probe.set_defaults(handler=cmd_probe_attention)

    pdp = commands.add_parser('pdp', help="power delay profiles")
    pdp_commands = pdp.add_subparsers(dest='pdp_command')
    pdp_commands.required = True
    pdp_list = pdp_commands.add_parser('list', help="print the known profiles")
    pdp_list.add_argument('--config', help="YAML settings file naming a profile_file")
    pdp_list.add_argument('--all', action='store_true', help="include bundled profile files")
    pdp_list.set_defaults(handler=cmd_pdp_list, staged=False)

    info = commands.add_parser('model-info', help="layer sizes and complexity")
    add_run_arguments(info)
    info.add_argument('--mode', choices=[OFFLINE, ONLINE], default=OFFLINE)
    info.set_defaults(handler=cmd_model_info)
    return parser


def main(args=None):
    """
    Run one command

    :return: exit status, 0 on success and 1 on failure
    """
    args = build_parser().parse_args(args)
    configure(quiet=args.quiet, json_log=args.json_log)
    try:
        settings = read_settings(args)
        if not getattr(args, 'staged', True):
            args.handler(args, settings)
            return 0
        seed = seed_of(args, settings)
        with staged_output(args.out) as staging:
            args.handler(args, settings, seed, staging)
        loginfo("{} finished, results in {}".format(args.command, os.path.abspath(args.out)))
    except (OfdmException, ValueError, OSError) as e:
        sys.stderr.write("error: {}: {}\n".format(type(e).__name__, str(e).replace("\n", " ")))
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
