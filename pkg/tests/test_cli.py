"""Command-line runs on the shipped corpus"""

import json

import pytest

from verifier_service import run


def _json_run(capsys, *argv):
    code = run(list(argv) + ['--format', 'json'])
    return code, json.loads(capsys.readouterr().out)


def test_check_linfty_verdicts(log_file, corpus, capsys):
    code, report = _json_run(capsys, 'check', 'linfty', corpus('abelian'))
    assert code == 0
    assert report['verdict'] == 'pass'
    code, report = _json_run(capsys, 'check', 'linfty', corpus('sl2_perturbed'))
    assert code == 1
    assert report['result']['first_violation']['monomial'] == 'h*e*f'


def test_report_fields(log_file, corpus, capsys):
    _, report = _json_run(capsys, 'check', 'linfty', corpus('sl2'))
    for key in ('command', 'subject', 'verdict', 'caps', 'convention_hash', 'convention_version', 'result'):
        assert key in report
    assert report['command'] == 'check linfty'
    assert report['subject'] == 'sl2'
    assert report['caps']['max_arity'] == 3


def test_max_arity_flag_overrides_document(log_file, corpus, capsys):
    _, report = _json_run(capsys, 'check', 'linfty', corpus('sl2'), '--max-arity', '2')
    assert report['caps']['max_arity'] == 2
    assert report['result']['checked'] == ['arity 1', 'arity 2']


def test_check_rb(log_file, corpus, capsys):
    code, report = _json_run(capsys, 'check', 'rb', corpus('aff1_rb'))
    assert code == 0
    assert [part['check'] for part in report['result']['parts']] == ['rb_operator', 'classical_rb']


def test_check_rb_reports_classical_residual(log_file, corpus, capsys, tmp_path):
    with open(corpus('aff1_rb'), encoding='utf-8') as handle:
        text = handle.read()
    path = tmp_path / 'perturbed.alg'
    path.write_text(text.rstrip('\n') + "\na -> y = 1\n", encoding='utf-8')
    code, report = _json_run(capsys, 'check', 'rb', str(path))
    assert code == 1
    classical = [p for p in report['result']['parts'] if p['check'] == 'classical_rb'][0]
    assert classical['residuals'][0]['monomial'] == 'a,b'
    assert classical['residuals'][0]['residual'] == '0 -1'


def test_convert_rmatrix_to_rb(log_file, corpus, capsys):
    code, report = _json_run(capsys, 'convert', 'rmatrix-to-rb', corpus('sl2_rmatrix'))
    assert code == 0
    assert 'matrix' in report['result']
    assert report['output'].startswith('[operator]')


def test_check_morphism(log_file, corpus, capsys):
    code, _ = _json_run(capsys, 'check', 'morphism', corpus('aff1_to_sl2'))
    assert code == 0


def test_bad_document_is_an_error(log_file, capsys, tmp_path):
    path = tmp_path / 'bad.alg'
    path.write_text("[format]\nname = bad\n", encoding='utf-8')
    code, report = _json_run(capsys, 'check', 'linfty', str(path))
    assert code == 2
    assert report['verdict'] == 'error'
    assert 'space g' in report['error']


def test_precondition_failure_is_an_error(log_file, corpus, capsys):
    code, report = _json_run(capsys, 'check', 'rmatrix', corpus('sl2_perturbed'))
    assert code == 2
    assert 'error' in report


def test_non_positive_cap_is_an_error(log_file, corpus, capsys):
    code, _ = _json_run(capsys, 'check', 'linfty', corpus('sl2'), '--max-arity', '0')
    assert code == 2


def test_unknown_command_exits(log_file, corpus):
    with pytest.raises(SystemExit):
        run(['check', 'nothing', corpus('sl2')])


def test_json_reports_are_deterministic(log_file, corpus, tmp_path):
    outputs = []
    for k in range(2):
        path = tmp_path / f"report{k}.json"
        run(['check', 'rmatrix', corpus('sl2_rmatrix'), '--format', 'json', '--output', str(path)])
        outputs.append(path.read_text(encoding='utf-8'))
    assert outputs[0] == outputs[1]


def test_text_report(log_file, corpus, capsys):
    code = run(['check', 'linfty', corpus('sl2_perturbed')])
    text = capsys.readouterr().out
    assert code == 1
    assert text.startswith('check linfty on sl2_perturbed: FAIL')
    assert 'residual [h*e*f]' in text
