#include "cli.hpp"

#include <qgcl/errors.hpp>
#include <qgcl/laws.hpp>
#include <qgcl/matrix_io.hpp>
#include <qgcl/parser.hpp>
#include <qgcl/semantics.hpp>
#include <qgcl/walks.hpp>
#include <qgcl/wp_equiv.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

namespace qgcl::cli {

namespace {

enum class Format { Human, Tsv };

struct Options {
    Format format = Format::Human;
    std::uint64_t seed = 1;
    double tol = kTolEq;
};

// Thrown for problems with the input files; reported with exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

ProgramFile parsePath(const std::string& path) {
    try {
        return parseFile(path);
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    }
}

ProgramFile load(const std::string& path, double tol) {
    ProgramFile file = parsePath(path);
    const auto diagnostics = check(file, tol);
    if (!diagnostics.empty()) {
        std::string msg = path + ": program is not well formed";
        for (const auto& d : diagnostics) msg += "\n  " + formatDiagnostic(d);
        throw InputError(msg);
    }
    return file;
}

// Two programs over one merged registry; the first file's variables come
// first in the tensor order.
struct Pair {
    Registry registry;
    ProgramPtr first;
    ProgramPtr second;
};

Pair loadPair(const std::string& a, const std::string& b, double tol) {
    ProgramFile fa = load(a, tol);
    ProgramFile fb = load(b, tol);
    Pair p{fa.registry, fa.body, fb.body};
    p.registry.merge(fb.registry);
    return p;
}

CMatrix loadMatrix(const std::string& path, std::size_t dim, const std::string& what) {
    CMatrix m = readMatrixFile(path);
    if (m.rows() != dim || m.cols() != dim) {
        throw InputError(what + " in " + path + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " but the program variables have dimension " + std::to_string(dim));
    }
    return m;
}

void printMatrix(std::ostream& out, const Options& o, const std::string& tag, const CMatrix& m) {
    if (o.format == Format::Human) {
        out << formatMatrix(m);
        return;
    }
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out << tag << '\t' << r << '\t' << c << '\t' << formatComplex(m(r, c)) << '\n';
}

std::string joinNames(const std::vector<std::string>& names, const char* sep) {
    std::string s;
    for (std::size_t k = 0; k < names.size(); ++k) s += (k ? sep : "") + names[k];
    return s;
}

int cmdCheck(const std::string& path, const Options& o, std::ostream& out) {
    const ProgramFile file = parsePath(path);
    const auto diagnostics = check(file, o.tol);
    for (const auto& d : diagnostics) out << formatDiagnostic(d) << '\n';
    if (!diagnostics.empty()) return kExitInput;
    out << (o.format == Format::Human ? "ok\n" : "status\tok\n");
    return kExitOk;
}

int cmdSemantics(const std::string& path, const Options& o, std::ostream& out) {
    const ProgramFile file = load(path, o.tol);
    const SemResult sem = Evaluator(file.registry, o.tol).semiClassical(file.body);
    const auto names = file.registry.namesOf(sem.vars);
    if (o.format == Format::Human) {
        out << "variables: " << (names.empty() ? "(none)" : joinNames(names, ", ")) << '\n';
        out << "states: " << sem.semi.size() << '\n';
        for (const auto& e : sem.semi.entries()) {
            out << "\nstate " << e.state.label() << '\n';
            printMatrix(out, o, e.state.label(), e.op);
        }
    } else {
        out << "variables\t" << joinNames(names, " ") << '\n';
        out << "states\t" << sem.semi.size() << '\n';
        for (const auto& e : sem.semi.entries()) printMatrix(out, o, e.state.label(), e.op);
    }
    return kExitOk;
}

void printKraus(std::ostream& out, const Options& o, const SuperOp& e) {
    if (o.format == Format::Human) out << "kraus operators: " << e.kraus().size() << '\n';
    for (std::size_t k = 0; k < e.kraus().size(); ++k) {
        if (o.format == Format::Human) out << "\nK" << k << '\n';
        printMatrix(out, o, "K" + std::to_string(k), e.kraus()[k]);
    }
}

int cmdKraus(const std::string& path, const Options& o, std::ostream& out) {
    const ProgramFile file = load(path, o.tol);
    printKraus(out, o, channelOf(file.body, file.registry));
    return kExitOk;
}

int cmdWp(const std::string& path, const std::string& obsPath, const Options& o, std::ostream& out) {
    const ProgramFile file = load(path, o.tol);
    const SuperOp dual = wp(file.body, file.registry);
    if (obsPath.empty()) {
        printKraus(out, o, dual);
        return kExitOk;
    }
    const VarSet vars = qvarSet(*file.body, file.registry);
    const Observable n(vars, loadMatrix(obsPath, file.registry.dimOf(vars), "observable"), file.registry, o.tol);
    printMatrix(out, o, "wp", dual.apply(n.matrix()));
    return kExitOk;
}

int cmdApply(const std::string& path, const std::string& rhoPath, const Options& o, std::ostream& out) {
    const ProgramFile file = load(path, o.tol);
    const VarSet vars = qvarSet(*file.body, file.registry);
    const CMatrix rho = loadMatrix(rhoPath, file.registry.dimOf(vars), "state");
    if (!isDensityOperator(rho, o.tol)) throw InputError(rhoPath + ": not a density operator");
    const CMatrix result = channelOf(file.body, file.registry).apply(rho);
    printMatrix(out, o, "rho", result);
    out << (o.format == Format::Human ? "trace: " : "trace\t") << formatComplex(result.trace()) << '\n';
    return kExitOk;
}

int printEquivalence(const EquivalenceVerdict& v, const char* yes, const char* no, const Options& o,
                     std::ostream& out) {
    if (o.format == Format::Human) {
        out << (v.equivalent ? yes : no) << " (residual " << sci(v.residual) << ")\n";
    } else {
        out << "verdict\t" << (v.equivalent ? yes : no) << "\nresidual\t" << sci(v.residual) << '\n';
    }
    return v.equivalent ? kExitOk : kExitFalse;
}

int cmdEquiv(const std::string& a, const std::string& b, bool coinFree, const Options& o, std::ostream& out) {
    const Pair p = loadPair(a, b, o.tol);
    if (coinFree) {
        return printEquivalence(coinFreeEquivalent(p.first, p.second, p.registry, o.tol), "coin-free equivalent",
                                "not coin-free equivalent", o, out);
    }
    return printEquivalence(equivalent(p.first, p.second, p.registry, o.tol), "equivalent", "not equivalent", o, out);
}

int cmdHoare(const std::string& path, const std::string& pre, const std::string& post, const Options& o,
             std::ostream& out) {
    const ProgramFile file = load(path, o.tol);
    const VarSet vars = qvarSet(*file.body, file.registry);
    const std::size_t d = file.registry.dimOf(vars);
    const Observable n1(vars, loadMatrix(pre, d, "precondition"), file.registry, o.tol);
    const Observable n2(vars, loadMatrix(post, d, "postcondition"), file.registry, o.tol);
    const HoareVerdict v = checkHoare(n1, file.body, n2, file.registry, o.tol);
    const char* verdict = v.satisfied ? "SATISFIED" : "VIOLATED";
    if (o.format == Format::Human) {
        out << verdict << " (margin " << sci(v.margin) << ")\n";
    } else {
        out << "verdict\t" << verdict << "\nmargin\t" << sci(v.margin) << '\n';
    }
    return v.satisfied ? kExitOk : kExitFalse;
}

int cmdRefine(const std::string& a, const std::string& b, std::size_t samples, const Options& o,
              std::ostream& out) {
    const Pair p = loadPair(a, b, o.tol);
    const RefinementVerdict v = refines(p.first, p.second, p.registry, samples, o.seed, o.tol);
    if (o.format == Format::Human) {
        out << "seed: " << o.seed << '\n';
        if (v.refuted) {
            out << "REFUTED after " << v.samplesChecked << " samples, witness (" << v.witnessKind << ")\n";
            printMatrix(out, o, "witness", *v.witness);
        } else {
            out << "UNREFUTED(" << v.samplesChecked << ")\n";
        }
    } else {
        out << "seed\t" << o.seed << "\nverdict\t" << (v.refuted ? "REFUTED" : "UNREFUTED") << "\nsamples\t"
            << v.samplesChecked << '\n';
        if (v.refuted) {
            out << "witness_kind\t" << v.witnessKind << '\n';
            printMatrix(out, o, "witness", *v.witness);
        }
    }
    return v.refuted ? kExitFalse : kExitOk;
}

int cmdLaws(const std::vector<std::string>& names, std::size_t count, const Options& o, std::ostream& out) {
    std::vector<LawId> laws;
    for (const auto& n : names) {
        const auto law = lawFromName(n);
        if (!law) throw InputError("unknown law '" + n + "'");
        laws.push_back(*law);
    }
    if (laws.empty()) laws.assign(std::begin(kAllLaws), std::end(kAllLaws));
    const auto results = runLawSuite(laws, count, o.seed, o.tol);
    bool allPass = true;
    if (o.format == Format::Human) out << "seed: " << o.seed << '\n';
    else out << "seed\t" << o.seed << "\nlaw\tinstances\tfailures\tmax_residual\tverdict\n";
    for (const auto& r : results) {
        const bool pass = r.failures == 0;
        allPass = allPass && pass;
        if (o.format == Format::Human) {
            char line[128];
            std::snprintf(line, sizeof line, "%-14s %3zu instances  %3zu failures  max residual %s  %s\n",
                          std::string(lawName(r.law)).c_str(), r.instances, r.failures, sci(r.maxResidual).c_str(),
                          pass ? "PASS" : "FAIL");
            out << line;
        } else {
            out << lawName(r.law) << '\t' << r.instances << '\t' << r.failures << '\t' << sci(r.maxResidual) << '\t'
                << (pass ? "PASS" : "FAIL") << '\n';
        }
    }
    return allPass ? kExitOk : kExitFalse;
}

std::map<std::string, std::string> parseAssignments(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw InputError("initial assignment '" + item + "' is not of the form var=value");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

int cmdWalk(const std::string& variant, std::size_t n, std::size_t steps, const std::string& init,
            std::size_t coins, const std::string& coinPath, std::ostream& out) {
    const auto v = variantFromName(variant);
    if (!v) throw InputError("unknown walk variant '" + variant + "'");
    WalkSpec spec;
    spec.variant = *v;
    spec.cycleSize = n;
    spec.steps = steps;
    spec.coinCount = coins;
    if (!coinPath.empty()) spec.sharedCoin = readMatrixFile(coinPath);
    validateWalkSpec(spec);
    try {
        spec.initialState = walkBasisState(spec, parseAssignments(init));
    } catch (const UnknownVariableError& e) {
        throw InputError(e.what());
    }
    const auto dist = positionDistribution(spec);
    out << (spec.variant == WalkVariant::TwoWalkerShared ? "q1\tq2\tprobability\n" : "position\tprobability\n");
    char buf[32];
    for (const auto& pp : dist) {
        for (std::size_t x : pp.position) out << x << '\t';
        std::snprintf(buf, sizeof buf, "%.12g", pp.probability < 5e-15 ? 0.0 : pp.probability);
        out << buf << '\n';
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analyse programs of the quantum guarded-command language", "qgcl"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    std::string format = "human";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "tsv"}));
    app.add_option("--seed", o.seed, "Seed for sampled checks and generated instances");
    app.add_option("--tol", o.tol, "Numerical tolerance")->check(CLI::PositiveNumber);

    std::string file;
    std::string other;
    std::string matrix;
    std::string pre;
    std::string post;
    std::size_t samples = 64;
    std::size_t count = 10;
    std::vector<std::string> lawNames;
    std::string variant = "hadamard";
    std::size_t cycle = 8;
    std::size_t steps = 1;
    std::string init;
    std::size_t coins = 2;
    std::string coinFile;

    auto* check = app.add_subcommand("check", "Parse and statically check a program");
    check->add_option("file", file, "Program file")->required();
    auto* semantics = app.add_subcommand("semantics", "Print the semi-classical semantics");
    semantics->add_option("file", file, "Program file")->required();
    auto* kraus = app.add_subcommand("kraus", "Print the Kraus operators of the program's channel");
    kraus->add_option("file", file, "Program file")->required();
    auto* wpCmd = app.add_subcommand("wp", "Weakest precondition, as Kraus operators or applied to --obs");
    wpCmd->add_option("file", file, "Program file")->required();
    wpCmd->add_option("--obs", matrix, "Observable matrix file");
    auto* apply = app.add_subcommand("apply", "Apply the program's channel to a density matrix");
    apply->add_option("file", file, "Program file")->required();
    apply->add_option("--rho", matrix, "Density matrix file")->required();
    auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two programs");
    equiv->add_option("first", file)->required();
    equiv->add_option("second", other)->required();
    auto* equivCf = app.add_subcommand("equiv-cf", "Decide coin-free equivalence of two programs");
    equivCf->add_option("first", file)->required();
    equivCf->add_option("second", other)->required();
    auto* hoare = app.add_subcommand("hoare", "Check the correctness formula {pre} program {post}");
    hoare->add_option("file", file, "Program file")->required();
    hoare->add_option("--pre", pre, "Precondition matrix file")->required();
    hoare->add_option("--post", post, "Postcondition matrix file")->required();
    auto* refine = app.add_subcommand("refine", "Search for a counterexample to first refined-by second");
    refine->add_option("first", file)->required();
    refine->add_option("second", other)->required();
    refine->add_option("--samples", samples, "Number of sampled observables")->check(CLI::PositiveNumber);
    auto* laws = app.add_subcommand("laws", "Check the algebraic laws on generated instances");
    laws->add_option("--law", lawNames, "Law to run (repeatable); all laws by default");
    laws->add_option("--count", count, "Instances per law")->check(CLI::PositiveNumber);
    auto* walk = app.add_subcommand("walk", "Position distribution of a coined walk on a cycle");
    walk->add_option("--variant", variant, "hadamard, unidirectional, position-time-coin, three-state, "
                                           "multi-coin or two-walker-shared");
    walk->add_option("--N", cycle, "Cycle size")->check(CLI::Range(2, 4096));
    walk->add_option("--T", steps, "Number of steps");
    walk->add_option("--init", init, "Initial basis state, e.g. c=L,p=0");
    walk->add_option("--coins", coins, "Number of coins of the multi-coin walk")->check(CLI::Range(1, 8));
    walk->add_option("--shared-coin", coinFile, "4x4 coin unitary for the two-walker walk (default CNOT)");

    std::vector<const char*> argv{"qgcl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }
    o.format = format == "tsv" ? Format::Tsv : Format::Human;

    try {
        if (*check) return cmdCheck(file, o, out);
        if (*semantics) return cmdSemantics(file, o, out);
        if (*kraus) return cmdKraus(file, o, out);
        if (*wpCmd) return cmdWp(file, matrix, o, out);
        if (*apply) return cmdApply(file, matrix, o, out);
        if (*equiv) return cmdEquiv(file, other, false, o, out);
        if (*equivCf) return cmdEquiv(file, other, true, o, out);
        if (*hoare) return cmdHoare(file, pre, post, o, out);
        if (*refine) return cmdRefine(file, other, samples, o, out);
        if (*laws) return cmdLaws(lawNames, count, o, out);
        if (*walk) return cmdWalk(variant, cycle, steps, init, coins, coinFile, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

} // namespace qgcl::cli
