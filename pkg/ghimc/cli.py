"""Command line front end.

Every command reads a run configuration (``--config`` plus flag
overrides), writes its files to the output folder and returns an exit code:
0 when every certificate passes, 2 on input errors and 3 when a
certificate fails.
"""
import argparse
import os
import sys

import numpy as np

from . import io
from .analysis import analyze_surface, mean_curvature, ghimc_residual, conformality_residual
from .examples import EXAMPLES, example_surface
from .revolution import (
    piii_integrate,
    phi_residual_summary,
    profile_from_phi,
    surface_from_profile,
    revolution_defect,
    piii_transform,
    piii_transform_family,
)
from .transforms import (
    christoffel,
    christoffel_residuals,
    darboux_solve,
    darboux_family,
    dtnr_check,
    backward_baecklund,
    darboux_from_backward,
    backward_ghimc_report,
    equivariance_check,
)
from .utils import display, display_residual, set_verbosity
from .utils.errors import GhimcError, ParseError


COMMANDS = (
    "analyze",
    "example",
    "generate-revolution",
    "christoffel",
    "darboux",
    "backward",
    "piii-transform",
    "equivariance",
    "export",
)


def _numbers(text, count, name):
    try:
        values = [float(item) for item in text.split(",")]
    except ValueError:
        raise ParseError(f"--{name} expects comma separated numbers, got {text}.")
    if len(values) != count:
        raise ParseError(f"--{name} expects {count} numbers, got {len(values)}.")
    return values


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--input", help="surface JSON read by the command")
    common.add_argument("--output", help="output folder")
    common.add_argument("--grid", help="nx,ny,x0,y0,hx,hy")
    common.add_argument("--ode", help="x_start,phi0,dphi0,x_end,h_ode")
    common.add_argument("--motion", help="r,s,t as twelve numbers w,x,y,z each")
    common.add_argument("--transform", help="transform checked by equivariance")
    common.add_argument("--rho", help="spectral parameter, or a comma separated family")
    common.add_argument("--tol", type=float, help="certificate tolerance")
    common.add_argument("--seed-lambda", dest="seed_lambda", help="w,x,y,z seed of lambda")
    common.add_argument("--format", dest="mesh_format", help="obj or ply")
    common.add_argument("--verbosity", type=int, help="0, 1 or 2")

    parser = argparse.ArgumentParser(
        prog="ghimc", description="Numerical laboratory for GHIMC surfaces."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparser = subparsers.add_parser(command, parents=[common])
        if command == "example":
            subparser.add_argument("name", choices=sorted(EXAMPLES))
    return parser


def build_dictionary(arguments):
    """Run configuration of the parsed arguments: file first, then flags."""
    dictionary = {} if arguments.config is None else io.load_dictionary(arguments.config)
    dictionary["command"] = arguments.command

    def section(name):
        return dictionary.setdefault(name, {})

    if arguments.input is not None:
        section("output")["input"] = arguments.input
    if arguments.output is not None:
        section("output")["output"] = arguments.output
    if arguments.verbosity is not None:
        section("output")["verbosity"] = arguments.verbosity
    if arguments.mesh_format is not None:
        section("output")["mesh_format"] = arguments.mesh_format
    if arguments.grid is not None:
        nx, ny, x0, y0, hx, hy = _numbers(arguments.grid, 6, "grid")
        section("grid").update(
            {"nx": int(nx), "ny": int(ny), "x0": x0, "y0": y0, "hx": hx, "hy": hy}
        )
    if arguments.ode is not None:
        x_start, phi0, dphi0, x_end, h_ode = _numbers(arguments.ode, 5, "ode")
        section("painleve").update(
            {"x_start": x_start, "phi0": phi0, "dphi0": dphi0, "x_end": x_end, "h_ode": h_ode}
        )
    if arguments.motion is not None:
        values = _numbers(arguments.motion, 12, "motion")
        section("motion").update(
            {"r": values[0:4], "s": values[4:8], "t": values[8:12]}
        )
    if arguments.transform is not None:
        section("motion")["transform"] = arguments.transform
    if arguments.rho is not None:
        rhos = _numbers(arguments.rho, len(arguments.rho.split(",")), "rho")
        if len(rhos) == 1:
            section("darboux")["rho"] = rhos[0]
        else:
            section("darboux")["rhos"] = rhos
    if arguments.tol is not None:
        section("tolerances")["certificate"] = arguments.tol
    if arguments.seed_lambda is not None:
        seed = _numbers(arguments.seed_lambda, 4, "seed-lambda")
        section("darboux")["lambda_inf0"] = seed
        section("revolution")["lambda0"] = seed
    return dictionary


def _output(parameters, name):
    return os.path.join(parameters.output.output_folder, name)


def _read_input(parameters):
    if parameters.output.input_file is None:
        raise ParseError(f"Command {parameters.command} needs --input.")
    display(f"Reading {parameters.output.input_file}")
    return io.load_surface(parameters.output.input_file)


def _p0(parameters):
    p0 = parameters.darboux.p0
    return None if p0 is None else tuple(p0)


def _certificate_exit(reports, tolerance):
    failed = [name for name, report in reports.items() if not report.passes(tolerance)]
    for name in failed:
        display(f"Certificate {name} failed: {reports[name].max:.3e} > {tolerance:.1e}")
    return 3 if failed else 0


def cmd_analyze(parameters):
    surface = _read_input(parameters)
    tolerances = parameters.tolerances
    display("Analyzing surface")
    report = analyze_surface(
        surface,
        n=parameters.analysis.n,
        h_min=parameters.h_min(surface.grid),
        margin=tolerances.margin,
        branch_factor=tolerances.branch_factor,
    )
    report["configuration"] = parameters.canonical_dictionary()
    io.save_report(report, _output(parameters, "analysis.json"))
    return 0


def cmd_example(parameters, name):
    surface = example_surface(name, parameters.grid)
    display(f"Writing example {name} on {surface.grid}")
    io.save_surface(surface, _output(parameters, f"{name}.json"))
    return 0


def _solve_painleve(parameters):
    ode = parameters.painleve
    display(f"Integrating Painleve III from x = {ode.x_start} to x = {ode.x_end}")
    return piii_integrate(
        ode.x_start,
        ode.phi0,
        ode.dphi0,
        ode.x_end,
        h_ode=ode.h_ode,
        blowup=ode.blowup,
        degeneracy_tolerance=ode.degeneracy_tolerance,
        progress=True,
    )


def cmd_generate_revolution(parameters):
    tolerances = parameters.tolerances
    revolution = parameters.revolution
    solution = _solve_painleve(parameters)
    profile = profile_from_phi(solution, tolerance=tolerances.identity)
    surface = surface_from_profile(
        profile, tuple(revolution.y_range), revolution.ny, stride=revolution.stride
    )
    display("Certifying the surface of revolution")
    sphere = mean_curvature(surface, tolerances.branch_factor)
    reports = {
        "conformality": conformality_residual(
            surface, tolerances.margin, tolerances.branch_factor
        ),
        "ghimc": ghimc_residual(
            surface, sphere, parameters.h_min(surface.grid), tolerances.margin
        ),
    }
    for report in reports.values():
        display_residual(report)
    conformality = float(np.max(profile.conformality_defect()))
    symmetry = revolution_defect(surface, profile.a)
    certificate = {
        "piii_residual": phi_residual_summary(solution),
        "profile_conformality": conformality,
        "revolution_defect": symmetry,
        "reports": reports,
    }
    io.save_phi_csv(solution, _output(parameters, "phi.csv"))
    io.save_profile_csv(profile, _output(parameters, "profile.csv"))
    io.save_profile_json(profile, _output(parameters, "profile.json"))
    io.save_surface(surface, _output(parameters, "surface.json"))
    io.save_report(certificate, _output(parameters, "certificate.json"))
    failed = conformality > tolerances.identity or symmetry > tolerances.revolution
    # the GHIMC residual involves four difference passes, judged by closedness
    exit_code = _certificate_exit({"ghimc": reports["ghimc"]}, tolerances.closedness)
    return 3 if failed else exit_code


def cmd_christoffel(parameters):
    surface = _read_input(parameters)
    tolerances = parameters.tolerances
    display("Integrating the Christoffel dual")
    g = christoffel(
        surface,
        p0=_p0(parameters),
        g0=parameters.darboux.g0,
        tolerance=tolerances.closedness,
        margin=tolerances.margin,
    )
    report = christoffel_residuals(surface, g, tolerances.margin)
    display_residual(report)
    io.save_surface(g, _output(parameters, "christoffel.json"))
    io.save_report(report, _output(parameters, "christoffel_report.json"))
    return _certificate_exit({"christoffel": report}, tolerances.certificate)


def _darboux_options(parameters):
    tolerances = parameters.tolerances
    return {
        "lambda_inf0": parameters.darboux.lambda_inf0,
        "lambda_l0": parameters.darboux.lambda_l0,
        "p0": _p0(parameters),
        "path_tolerance": tolerances.path,
        "denominator_factor": tolerances.denominator_factor,
        "margin": tolerances.margin,
    }


def _transform_passes(report, rho):
    if not report.classical:
        display(f"The transform with rho = {rho} is not classical")
    if not report.ghimc_preserved:
        display(f"The transform with rho = {rho} of a GHIMC surface is not GHIMC")
    return report.classical and report.ghimc_preserved


def cmd_darboux(parameters):
    surface = _read_input(parameters)
    tolerances = parameters.tolerances
    g = christoffel(
        surface,
        p0=_p0(parameters),
        g0=parameters.darboux.g0,
        tolerance=tolerances.closedness,
        margin=tolerances.margin,
    )
    sphere = mean_curvature(surface, tolerances.branch_factor)
    if parameters.darboux.rhos is not None:
        family = []
        exit_code = 0
        runs = darboux_family(
            surface, g, parameters.darboux.rhos, **_darboux_options(parameters)
        )
        for run in runs:
            if run.error is not None:
                family.append({"rho": run.rho, "error": run.error})
                exit_code = 3
                continue
            report = dtnr_check(
                surface,
                sphere,
                run.f_hat,
                tolerance=tolerances.classicality,
                margin=tolerances.margin,
                branch_factor=tolerances.branch_factor,
                mean_curvature_factor=tolerances.mean_curvature,
                ghimc_tolerance=tolerances.ghimc,
            )
            family.append({"rho": run.rho, "darboux": run.data, "dtnr": report})
            if not _transform_passes(report, run.rho):
                exit_code = 3
            io.save_surface(run.f_hat, _output(parameters, f"f_hat_rho_{run.rho:g}.json"))
        io.save_report({"family": family}, _output(parameters, "darboux_family.json"))
        return exit_code

    display(f"Solving the Darboux system with rho = {parameters.darboux.rho}")
    data, f_hat, g_hat = darboux_solve(
        surface, g, parameters.darboux.rho, **_darboux_options(parameters)
    )
    report = dtnr_check(
        surface,
        sphere,
        f_hat,
        tolerance=tolerances.classicality,
        margin=tolerances.margin,
        branch_factor=tolerances.branch_factor,
        mean_curvature_factor=tolerances.mean_curvature,
        ghimc_tolerance=tolerances.ghimc,
    )
    for residual in report.residuals.values():
        display_residual(residual)
    io.save_surface(f_hat, _output(parameters, "f_hat.json"))
    io.save_surface(g_hat, _output(parameters, "g_hat.json"))
    io.save_report({"darboux": data, "dtnr": report}, _output(parameters, "darboux.json"))
    exit_code = _certificate_exit({"darboux": data.certificate}, tolerances.certificate)
    if not _transform_passes(report, parameters.darboux.rho):
        exit_code = 3
    return exit_code


def cmd_backward(parameters):
    surface = _read_input(parameters)
    tolerances = parameters.tolerances
    sphere = mean_curvature(surface, tolerances.branch_factor)
    h_min = parameters.h_min(surface.grid)
    display("Backward Baecklund transform")
    transform = backward_baecklund(
        surface,
        sphere,
        mu0=parameters.darboux.mu0,
        p0=_p0(parameters),
        h_min=h_min,
        tolerance=tolerances.closedness,
        margin=tolerances.margin,
    )
    display_residual(transform.residual)
    report = {
        "backward_baecklund": transform.residual,
        "ghimc_h_bar": backward_ghimc_report(surface, transform.h_bar, h_min, tolerances.margin),
    }
    try:
        f_hat, _, certificate = darboux_from_backward(
            surface,
            sphere,
            transform.h_bar,
            lambda_inf0=parameters.darboux.lambda_inf0,
            p0=_p0(parameters),
            tolerance=tolerances.closedness,
            margin=tolerances.margin,
            denominator_factor=tolerances.denominator_factor,
        )
        io.save_surface(f_hat, _output(parameters, "f_hat.json"))
        report["darboux_from_backward"] = certificate
    except GhimcError as error:
        display(f"No induced Darboux transform: {error}")
        report["darboux_from_backward"] = error.to_dict()
    io.save_surface(transform.h_bar, _output(parameters, "h_bar.json"))
    io.save_surface(transform.mu, _output(parameters, "mu.json"))
    io.save_report(report, _output(parameters, "backward.json"))
    return _certificate_exit({"backward_baecklund": transform.residual}, tolerances.certificate)


def _piii_options(parameters):
    tolerances = parameters.tolerances
    revolution = parameters.revolution
    return {
        "angle": revolution.angle,
        "lambda0": revolution.lambda0,
        "m0": revolution.m0,
        "y_range": tuple(revolution.transform_y_range),
        "ny": revolution.transform_ny,
        "start_index": revolution.start_index,
        "classicality_tolerance": tolerances.classicality,
        "mean_curvature_factor": tolerances.mean_curvature,
        "ghimc_tolerance": tolerances.ghimc,
        "piii_tolerance": tolerances.piii,
        "seed_tolerance": tolerances.seed,
        "propagation_tolerance": tolerances.propagation,
        "identity_tolerance": tolerances.identity,
        "conformal_tolerance": tolerances.conformal,
        "margin": tolerances.margin,
    }


def cmd_piii_transform(parameters):
    solution = _solve_painleve(parameters)
    if parameters.darboux.rhos is not None:
        family = []
        exit_code = 0
        for rho, result, error in piii_transform_family(
            solution, parameters.darboux.rhos, **_piii_options(parameters)
        ):
            if error is not None:
                family.append({"rho": rho, "error": error})
                exit_code = 3
            else:
                family.append(result.certificate)
                io.save_phi_csv(result.phi_hat, _output(parameters, f"phi_hat_rho_{rho:g}.csv"))
        io.save_report({"family": family}, _output(parameters, "piii_family.json"))
        return exit_code

    io.save_phi_csv(solution, _output(parameters, "phi.csv"))
    try:
        result = piii_transform(solution, parameters.darboux.rho, **_piii_options(parameters))
    except GhimcError as error:
        if error.report is not None:
            io.save_report(error.report, _output(parameters, "piii_transform.json"))
        raise
    io.save_phi_csv(result.phi_hat, _output(parameters, "phi_hat.csv"))
    io.save_phi_json(result.phi_hat, _output(parameters, "phi_hat.json"))
    io.save_profile_csv(result.profile_hat, _output(parameters, "profile_hat.csv"))
    io.save_surface(result.transform.f_hat, _output(parameters, "f_hat.json"))
    io.save_report(result.certificate, _output(parameters, "piii_transform.json"))
    return 0


def cmd_equivariance(parameters):
    surface = _read_input(parameters)
    tolerances = parameters.tolerances
    darboux = parameters.darboux
    transform = parameters.motion.transform
    display(f"Equivariance of the {transform} transform")
    report = equivariance_check(
        surface,
        parameters.motion.motion,
        transform=transform,
        margin=tolerances.margin,
        rho=darboux.rho,
        p0=_p0(parameters),
        lambda_inf0=darboux.lambda_inf0,
        lambda_l0=darboux.lambda_l0,
        g0=darboux.g0,
        mu0=darboux.mu0,
        h_min=parameters.h_min(surface.grid),
    )
    io.save_report(report, _output(parameters, "equivariance.json"))
    if report["deviation"] <= tolerances.certificate:
        return 0
    display(
        f"Certificate deviation failed: {report['deviation']:.3e} > {tolerances.certificate:.1e}"
    )
    return 3


def cmd_export(parameters):
    surface = _read_input(parameters)
    mesh_format = parameters.output.mesh_format
    stem = os.path.splitext(os.path.basename(parameters.output.input_file))[0]
    written = io.export_mesh(
        surface,
        _output(parameters, f"{stem}.{mesh_format}"),
        mesh_format=mesh_format,
        tolerance=parameters.tolerances.imaginary,
    )
    display(f"Wrote {written}")
    return 0


HANDLERS = {
    "analyze": cmd_analyze,
    "generate-revolution": cmd_generate_revolution,
    "christoffel": cmd_christoffel,
    "darboux": cmd_darboux,
    "backward": cmd_backward,
    "piii-transform": cmd_piii_transform,
    "equivariance": cmd_equivariance,
    "export": cmd_export,
}


def main(argv=None):
    """Runs one command and returns its exit code."""
    arguments = build_parser().parse_args(argv)
    try:
        parameters = io.Run_parameters(build_dictionary(arguments))
        set_verbosity(parameters.output.verbosity)
        if arguments.command == "example":
            return cmd_example(parameters, arguments.name)
        return HANDLERS[arguments.command](parameters)
    except GhimcError as error:
        print(f"{type(error).__name__}: {error}", file=sys.stderr, flush=True)
        return error.exit_code


if __name__ == "__main__":
    sys.exit(main())
