"""
Tests for the dqmotion command line
Exit codes, output files, report lines and determinism of the batch pipelines
"""

import time

import numpy as np
import pytest

import orchestrator
from cli import EXIT_DEGENERATE, EXIT_INVALID, EXIT_IO, EXIT_OK, EXIT_ROUNDTRIP, main
from config import CliConfig, build_config, parse_cutoff
from conftest import random_rigid_track
from exceptions import InvalidArgumentError
from signal_io import TrackKind, load_spectrum, load_track, save_track

SLOW = "1:0.3:0.5:0,0,1"
FAST = "5:0.2:0.4:1,1,0"


def synth(path, length, spec, sample_rate=None):
    argv = ['synth', '--length', str(length), '--spec', spec, '-o', str(path)]
    if sample_rate is not None:
        argv += ['--sample-rate', str(sample_rate)]
    assert main(argv) == EXIT_OK
    return path


def write_rigid(path, rows):
    lines = ["t,qw,qx,qy,qz,tx,ty,tz"] + [",".join(str(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


class TestSpectrumCommand:
    def test_constant_track_has_single_nonzero_row(self, tmp_path):
        track = write_rigid(tmp_path / "c.csv", [(n, 1, 0, 0, 0, 0.5, 0, 0) for n in range(6)])
        out = tmp_path / "spec.csv"
        assert main(['spectrum', '-i', str(track), '-o', str(out)]) == EXIT_OK
        spectrum = load_spectrum(out)
        magnitudes = np.linalg.norm(spectrum.coefficients, axis=1)
        assert magnitudes[0] > 1.0
        assert np.all(magnitudes[1:] <= 1e-12)

    def test_sides_agree_on_scalar_track(self, tmp_path):
        track = write_rigid(tmp_path / "s.csv", [(n, 1, 0, 0, 0, 0, 0, 0) for n in range(5)])
        left, right = tmp_path / "left.csv", tmp_path / "right.csv"
        assert main(['spectrum', '-i', str(track), '-o', str(left), '--side', 'left']) == EXIT_OK
        assert main(['spectrum', '-i', str(track), '-o', str(right), '--side', 'right']) == EXIT_OK
        difference = load_spectrum(left).coefficients - load_spectrum(right).coefficients
        assert np.max(np.abs(difference)) <= 1e-15

    def test_fast_matches_reference(self, tmp_path, rng):
        track = tmp_path / "r.csv"
        save_track(random_rigid_track(rng, 50), track)
        naive, fast = tmp_path / "naive.csv", tmp_path / "fast.csv"
        assert main(['spectrum', '-i', str(track), '-o', str(naive)]) == EXIT_OK
        assert main(['spectrum', '-i', str(track), '-o', str(fast), '--fast']) == EXIT_OK
        difference = load_spectrum(naive).coefficients - load_spectrum(fast).coefficients
        assert np.max(np.abs(difference)) <= 1e-9

    def test_top_prints_dominant_distances(self, tmp_path, capsys):
        track = synth(tmp_path / "t.csv", 32, "3:0.2:0.1:0,1,0")
        assert main(['spectrum', '-i', str(track), '-o', str(tmp_path / "o.json"),
                     '--encoding', 'pure', '--top', '1']) == EXIT_OK
        assert capsys.readouterr().out.startswith("distance=3 ")
        assert (tmp_path / "o.json").read_text().lstrip().startswith("[")


class TestFilterCommand:
    def test_all_pass_reproduces_input(self, tmp_path):
        track = synth(tmp_path / "in.csv", 32, f"{SLOW};{FAST}")
        out = tmp_path / "out.csv"
        assert main(['filter', '-i', str(track), '-o', str(out), '--low-pass', '16']) == EXIT_OK
        original, filtered = load_track(track), load_track(out)
        assert np.max(np.abs(original.rotations() - filtered.rotations())) <= 1e-10
        assert np.max(np.abs(original.translations() - filtered.translations())) <= 1e-10

    def test_dc_only_gives_constant_pose(self, tmp_path):
        track = synth(tmp_path / "in.csv", 16, SLOW)
        out = tmp_path / "out.csv"
        assert main(['filter', '-i', str(track), '-o', str(out), '--low-pass', '0', '--renormalize']) == EXIT_OK
        rotations = load_track(out).rotations()
        assert np.max(np.abs(rotations - rotations[0])) <= 1e-12

    def test_dc_only_without_renormalize_points_to_flag(self, tmp_path, capsys):
        track = synth(tmp_path / "in.csv", 16, SLOW)
        out = tmp_path / "out.csv"
        assert main(['filter', '-i', str(track), '-o', str(out), '--low-pass', '0']) == EXIT_INVALID
        assert "--renormalize" in capsys.readouterr().err
        assert not out.exists()
        with pytest.raises(SystemExit):
            main(['filter', '--help'])
        assert "needs --renormalize" in " ".join(capsys.readouterr().out.split())

    def test_two_tone_low_pass_matches_slow_tone(self, tmp_path):
        both = synth(tmp_path / "both.csv", 64, f"{SLOW};{FAST}")
        slow = synth(tmp_path / "slow.csv", 64, SLOW)
        out = tmp_path / "out.csv"
        assert main(['filter', '-i', str(both), '-o', str(out), '--low-pass', '2', '--encoding', 'pure']) == EXIT_OK
        filtered, reference = load_track(out), load_track(slow)
        assert np.max(np.abs(filtered.rotations() - reference.rotations())) <= 1e-6
        assert np.max(np.abs(filtered.translations() - reference.translations())) <= 1e-6

    def test_report_line_and_determinism(self, tmp_path, capsys):
        track = synth(tmp_path / "in.csv", 48, f"{SLOW};{FAST}")
        outputs = []
        for index, workers in enumerate(['1', '1', '4']):
            out = tmp_path / f"out{index}.csv"
            assert main(['filter', '-i', str(track), '-o', str(out), '--high-pass', '3',
                         '--renormalize', '--workers', workers]) == EXIT_OK
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]
        report = capsys.readouterr().out.strip().split("\n")[-1]
        assert report.startswith("kept_bins=41 attenuated_energy_fraction=")
        assert report.endswith("renormalized=true")

    def test_hertz_cutoff_matches_bins(self, tmp_path):
        track = synth(tmp_path / "in.csv", 64, f"{SLOW};{FAST}", sample_rate=32)
        by_bins, by_hz = tmp_path / "bins.csv", tmp_path / "hz.csv"
        assert main(['filter', '-i', str(track), '-o', str(by_bins), '--low-pass', '4', '--renormalize']) == EXIT_OK
        assert main(['filter', '-i', str(track), '-o', str(by_hz), '--low-pass', '2hz', '--renormalize']) == EXIT_OK
        assert by_bins.read_bytes() == by_hz.read_bytes()

    def test_invalid_flags_exit_2_without_output(self, tmp_path):
        track = synth(tmp_path / "in.csv", 8, SLOW)
        out = tmp_path / "out.csv"
        assert main(['filter', '-i', str(track), '-o', str(out), '--low-pass', '1', '--high-pass', '2']) == EXIT_INVALID
        assert main(['filter', '-i', str(track), '-o', str(out)]) == EXIT_INVALID
        assert main(['filter', '-i', str(track), '-o', str(out), '--band', '3:1']) == EXIT_INVALID
        assert main(['filter', '-i', str(track), '-o', str(out), '--low-pass', 'abc']) == EXIT_INVALID
        assert not out.exists()

    def test_degenerate_renormalization_exits_4(self, tmp_path):
        track = write_rigid(tmp_path / "flip.csv", [(0, 1, 0, 0, 0, 0, 0, 0), (1, -1, 0, 0, 0, 0, 0, 0)])
        out = tmp_path / "out.csv"
        code = main(['filter', '-i', str(track), '-o', str(out), '--low-pass', '0',
                     '--renormalize', '--no-hemisphere-align'])
        assert code == EXIT_DEGENERATE
        assert not out.exists()

    def test_config_file_supplies_options(self, tmp_path):
        track = synth(tmp_path / "in.csv", 32, f"{SLOW};{FAST}")
        config = tmp_path / "dqmotion.env"
        config.write_text("LOW_PASS=2\nencoding=pure\n")
        from_file, from_flags = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(['filter', '-i', str(track), '-o', str(from_file), '--config', str(config)]) == EXIT_OK
        assert main(['filter', '-i', str(track), '-o', str(from_flags), '--low-pass', '2',
                     '--encoding', 'pure']) == EXIT_OK
        assert from_file.read_bytes() == from_flags.read_bytes()


class TestRoundtripCommand:
    def test_valid_tracks_exit_0(self, tmp_path, capsys):
        single = write_rigid(tmp_path / "one.csv", [(0, 1, 0, 0, 0, 1, 2, 3)])
        assert main(['roundtrip', '-i', str(single)]) == EXIT_OK
        line = capsys.readouterr().out.strip()
        assert line.startswith("max_error=") and float(line.split("=")[1]) <= 1e-15
        track = synth(tmp_path / "in.csv", 30, f"{SLOW};{FAST}")
        for side in ('left', 'right'):
            assert main(['roundtrip', '-i', str(track), '--side', side]) == EXIT_OK

    def test_thousand_frames_fast(self, tmp_path, rng):
        track = tmp_path / "big.csv"
        save_track(random_rigid_track(rng, 1000), track)
        start = time.perf_counter()
        assert main(['roundtrip', '-i', str(track), '--fast']) == EXIT_OK
        assert time.perf_counter() - start < 5.0

    def test_bound_exceeded_exits_5(self, tmp_path, monkeypatch):
        track = synth(tmp_path / "in.csv", 8, SLOW)
        monkeypatch.setattr(orchestrator, 'ROUNDTRIP_BOUND', -1.0)
        assert main(['roundtrip', '-i', str(track)]) == EXIT_ROUNDTRIP


class TestSynthAndConvert:
    def test_empty_spec_gives_identity_track(self, tmp_path):
        out = synth(tmp_path / "id.csv", 4, "")
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "t,qw,qx,qy,qz,tx,ty,tz"
        assert [line.split(",")[1:] for line in lines[1:]] == [["1", "0", "0", "0", "0", "0", "0"]] * 4

    def test_bad_spec_exits_2(self, tmp_path):
        out = tmp_path / "bad.csv"
        assert main(['synth', '--length', '8', '--spec', '1:2', '-o', str(out)]) == EXIT_INVALID
        assert main(['synth', '--length', '8', '--spec', '7:0.1:0:0,0,1', '-o', str(out)]) == EXIT_INVALID
        assert not out.exists()

    def test_csv_json_csv_round_trip(self, tmp_path):
        source = synth(tmp_path / "a.csv", 12, f"{SLOW};{FAST}")
        as_json, back = tmp_path / "a.json", tmp_path / "b.csv"
        assert main(['convert', '-i', str(source), '-o', str(as_json)]) == EXIT_OK
        assert main(['convert', '-i', str(as_json), '-o', str(back)]) == EXIT_OK
        assert back.read_bytes() == source.read_bytes()

    def test_rigid_to_pure_and_back(self, tmp_path):
        source = synth(tmp_path / "a.csv", 12, "2:0.5:0:0,1,0")
        pure, rigid = tmp_path / "pure.csv", tmp_path / "rigid.csv"
        assert main(['convert', '-i', str(source), '-o', str(pure), '--to-encoding', 'pure']) == EXIT_OK
        assert load_track(pure).kind == TrackKind.EULER
        assert main(['convert', '-i', str(pure), '-o', str(rigid), '--to-encoding', 'rigid']) == EXIT_OK
        assert np.max(np.abs(load_track(rigid).rotations() - load_track(source).rotations())) <= 1e-12


class TestErrorsAndConfig:
    def test_missing_input_exits_3(self, tmp_path):
        assert main(['roundtrip', '-i', str(tmp_path / "missing.csv")]) == EXIT_IO

    def test_invalid_track_exits_2_without_output(self, tmp_path):
        track = write_rigid(tmp_path / "bad.csv", [(0, 1, 0, 0, 0, 0, 0, 0), (1, 0.5, 0, 0, 0, 0, 0, 0)])
        out = tmp_path / "out.csv"
        assert main(['spectrum', '-i', str(track), '-o', str(out)]) == EXIT_INVALID
        assert not out.exists()
        assert main(['spectrum', '-i', str(track), '-o', str(out), '--renormalize-input']) == EXIT_OK

    def test_json_string_fields(self, tmp_path, capsys):
        track = tmp_path / "angles.json"
        track.write_text('[{"t": "0", "ax": "0.1", "ay": 0, "az": 0}, {"t": "1", "ax": "0.2", "ay": 0, "az": 0}]')
        assert main(['roundtrip', '-i', str(track), '--encoding', 'pure']) == EXIT_OK
        track.write_text('[{"t": "0", "ax": "0.1", "ay": 0, "az": 0}, {"t": "one", "ax": "0.2", "ay": 0, "az": 0}]')
        assert main(['roundtrip', '-i', str(track), '--encoding', 'pure']) == EXIT_INVALID
        assert "Line 2" in capsys.readouterr().err

    def test_parse_cutoff(self):
        assert parse_cutoff("7", 64, 10.0) == 7
        assert parse_cutoff("2.5hz", 10, 10.0) == 3
        assert parse_cutoff("2.4HZ", 10, 10.0) == 2
        with pytest.raises(InvalidArgumentError):
            parse_cutoff("-1", 10, 1.0)
        with pytest.raises(InvalidArgumentError):
            parse_cutoff("fast", 10, 1.0)

    def test_config_validation(self):
        config = build_config('spectrum', {'input': 'a.csv', 'output': 'b.json', 'axis': '0,0,2'})
        assert config.axis == (0.0, 0.0, 1.0)
        assert config.resolved_output_format().value == 'json'
        with pytest.raises(ValueError):
            CliConfig(command='spectrum', input='a.csv', output='b.csv', axis=(0.0, 0.0, 0.0))
        with pytest.raises(ValueError):
            CliConfig(command='synth', output='b.csv')
        with pytest.raises(ValueError):
            CliConfig(command='filter', input='a.csv', output='b.csv', band='4:2')
