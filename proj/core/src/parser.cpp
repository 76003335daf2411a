#include "qgcl/parser.hpp"

#include "lexer.hpp"
#include "qgcl/errors.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace qgcl {

namespace {

using detail::Token;
using detail::TokenKind;

const std::set<std::string>& reservedWords() {
    static const std::set<std::string> words{"abort", "skip",  "measure", "end",  "qif",     "fiq",
                                             "begin", "local", "pchoice", "qvar", "cvar",    "gate",
                                             "meas",  "alpha", "i",       "pi",   "sqrt",    "exp"};
    return words;
}

class Parser {
public:
    explicit Parser(std::string_view source) : tokens_(detail::tokenize(source)) {}

    ProgramFile parseFile() {
        while (parseDeclaration()) {
        }
        if (peek().kind == TokenKind::End) fail("expected a program body");
        file_.body = parseProg();
        if (peek().is(";")) next();
        if (peek().kind != TokenKind::End) fail("unexpected '" + peek().text + "' after the program");
        return std::move(file_);
    }

private:
    // ---- token helpers -------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    [[noreturn]] void fail(const std::string& message) const { failAt(peek(), message); }
    [[noreturn]] static void failAt(const Token& t, const std::string& message) {
        throw ParseError(message, t.line, t.column);
    }
    static SourceLoc locOf(const Token& t) { return {t.line, t.column}; }

    void expect(std::string_view punct) {
        if (!peek().is(punct)) fail("expected '" + std::string(punct) + "' but found '" + describe(peek()) + "'");
        next();
    }
    void expectWord(std::string_view word) {
        if (!peek().isWord(word)) fail("expected '" + std::string(word) + "' but found '" + describe(peek()) + "'");
        next();
    }
    static std::string describe(const Token& t) { return t.kind == TokenKind::End ? "end of input" : t.text; }

    std::string identifier(const char* what) {
        if (peek().kind != TokenKind::Ident || reservedWords().count(peek().text)) {
            fail(std::string("expected ") + what + " but found '" + describe(peek()) + "'");
        }
        return next().text;
    }

    std::size_t integer(const char* what) {
        const Token& t = peek();
        if (t.kind != TokenKind::Number || t.number < 0 || t.number != std::floor(t.number)) {
            fail(std::string("expected ") + what);
        }
        next();
        return static_cast<std::size_t>(t.number);
    }

    // Outcome and domain labels: integers, identifiers, '+' and '-'.
    std::string label() {
        const Token& t = peek();
        if (t.kind == TokenKind::Ident || t.kind == TokenKind::Number || t.is("+") || t.is("-")) {
            return next().text;
        }
        fail("expected a label but found '" + describe(t) + "'");
    }

    // ---- declarations --------------------------------------------------

    bool parseDeclaration() {
        const Token& t = peek();
        if (t.isWord("qvar")) {
            next();
            std::vector<std::pair<std::string, Token>> names;
            do {
                const Token at = peek();
                names.emplace_back(identifier("a variable name"), at);
            } while (peek().is(",") && (next(), true));
            expect(":");
            const std::size_t dim = integer("a dimension");
            expect(";");
            for (const auto& [name, at] : names) {
                try {
                    file_.registry.declareQVar(name, dim);
                } catch (const Error& e) {
                    failAt(at, e.what());
                }
            }
            return true;
        }
        if (t.isWord("cvar")) {
            next();
            const Token at = peek();
            const std::string name = identifier("a variable name");
            expect(":");
            expect("{");
            std::vector<std::string> domain{label()};
            while (peek().is(",")) {
                next();
                domain.push_back(label());
            }
            expect("}");
            expect(";");
            try {
                file_.registry.declareCVar(name, std::move(domain));
            } catch (const Error& e) {
                failAt(at, e.what());
            }
            return true;
        }
        if (t.isWord("gate")) {
            next();
            const Token at = peek();
            const std::string name = identifier("a gate name");
            if (gatelib::isBuiltinGate(name) || file_.findGate(name)) failAt(at, "gate '" + name + "' already defined");
            expect("=");
            CMatrix m = matrixExpr();
            expect(";");
            if (!m.isSquare()) failAt(at, "gate '" + name + "' is not a square matrix");
            file_.gates.push_back({name, std::move(m), false});
            return true;
        }
        if (t.isWord("meas")) {
            next();
            const Token at = peek();
            const std::string name = identifier("a measurement name");
            if (gatelib::isBuiltinMeasurement(name) || file_.findMeasurement(name)) {
                failAt(at, "measurement '" + name + "' already defined");
            }
            expect("=");
            expect("{");
            MeasDef m{name, {}, {}, false};
            do {
                m.outcomes.push_back(label());
                expect(":");
                m.ops.push_back(matrixExpr());
            } while (peek().is(",") && (next(), true));
            expect("}");
            expect(";");
            for (const auto& op : m.ops) {
                if (!op.isSquare() || op.rows() != m.ops.front().rows()) {
                    failAt(at, "measurement '" + name + "' has operators of different shapes");
                }
            }
            file_.measurements.push_back(std::move(m));
            return true;
        }
        return false;
    }

    // ---- scalar expressions --------------------------------------------

    Complex expr() {
        Complex v = term();
        while (peek().is("+") || peek().is("-")) {
            const bool plus = next().text == "+";
            const Complex rhs = term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    Complex term() {
        Complex v = unary();
        // "scalar * [[..]]" leaves the last "*" to matrixExpr.
        while ((peek().is("*") && !peek(1).is("[")) || peek().is("/")) {
            const bool times = next().text == "*";
            const Complex rhs = unary();
            if (!times && rhs == Complex{0.0, 0.0}) fail("division by zero");
            v = times ? v * rhs : v / rhs;
        }
        return v;
    }

    Complex unary() {
        if (peek().is("-")) {
            next();
            return -unary();
        }
        if (peek().is("+")) {
            next();
            return unary();
        }
        return primary();
    }

    Complex primary() {
        const Token& t = peek();
        if (t.kind == TokenKind::Number) {
            next();
            return {t.number, 0.0};
        }
        if (t.kind == TokenKind::Imag) {
            next();
            return {0.0, t.number};
        }
        if (t.isWord("i")) {
            next();
            return {0.0, 1.0};
        }
        if (t.isWord("pi")) {
            next();
            return {std::numbers::pi, 0.0};
        }
        if (t.isWord("sqrt") || t.isWord("exp") || t.isWord("cos") || t.isWord("sin")) {
            const std::string fn = next().text;
            expect("(");
            const Complex arg = expr();
            expect(")");
            if (fn == "sqrt") return std::sqrt(arg);
            if (fn == "exp") return std::exp(arg);
            if (fn == "cos") return std::cos(arg);
            return std::sin(arg);
        }
        if (t.is("(")) {
            next();
            const Complex v = expr();
            expect(")");
            return v;
        }
        fail("expected a number but found '" + describe(t) + "'");
    }

    double realExpr(const char* what) {
        const Token at = peek();
        const Complex v = expr();
        if (std::abs(v.imag()) > 0.0) failAt(at, std::string(what) + " must be real");
        return v.real();
    }

    std::vector<Complex> row() {
        expect("[");
        std::vector<Complex> out{expr()};
        while (peek().is(",")) {
            next();
            out.push_back(expr());
        }
        expect("]");
        return out;
    }

    CMatrix matrixLiteral() {
        const Token at = peek();
        expect("[");
        std::vector<std::vector<Complex>> rows{row()};
        while (peek().is(",")) {
            next();
            rows.push_back(row());
        }
        expect("]");
        std::vector<Complex> data;
        for (const auto& r : rows) {
            if (r.size() != rows.front().size()) failAt(at, "matrix rows have different lengths");
            data.insert(data.end(), r.begin(), r.end());
        }
        return CMatrix(rows.size(), rows.front().size(), std::move(data));
    }

    // Either a literal or "scalar * literal".
    CMatrix matrixExpr() {
        if (peek().is("[")) return matrixLiteral();
        const Complex scale = expr();
        expect("*");
        return matrixLiteral() * scale;
    }

    // ---- variables and guards ------------------------------------------

    std::vector<std::string> qvarList() {
        std::vector<std::string> out;
        do {
            const Token at = peek();
            std::string name = identifier("a quantum variable");
            if (!file_.registry.hasQVar(name)) failAt(at, "unknown quantum variable '" + name + "'");
            out.push_back(std::move(name));
        } while (peek().is(",") && (next(), true));
        return out;
    }

    std::size_t dimOfList(const std::vector<std::string>& names) const {
        std::size_t d = 1;
        for (const auto& n : names) d *= file_.registry.qvar(file_.registry.qvarIndex(n)).dim;
        return d;
    }

    CMatrix ket(std::size_t dim) {
        const Token at = peek();
        expect("|");
        CMatrix v;
        if (peek().is("(")) {
            next();
            std::vector<Complex> amps{expr()};
            while (peek().is(",")) {
                next();
                amps.push_back(expr());
            }
            expect(")");
            if (amps.size() != dim) {
                failAt(at, "vector has " + std::to_string(amps.size()) + " entries, expected " + std::to_string(dim));
            }
            v = CMatrix::columnVector(amps);
        } else {
            const std::size_t k = integer("a basis index");
            if (k >= dim) failAt(at, "basis index " + std::to_string(k) + " out of range for dimension " + std::to_string(dim));
            v = CMatrix::basisVector(dim, k);
        }
        expect(">");
        return v;
    }

    std::optional<AlphaSpec> alphaSpec() {
        if (!(peek().is("(") && peek(1).isWord("alpha"))) return std::nullopt;
        next();
        next();
        const Token kind = peek();
        const std::string word = identifier("lambda, uniform, phases or table");
        AlphaSpec spec;
        if (word == "lambda") {
            spec = AlphaLambda{};
        } else if (word == "uniform") {
            spec = AlphaUniform{};
        } else if (word == "phases") {
            AlphaPhases ph;
            ph.angles.push_back(realExpr("a phase"));
            while (peek().is(",")) {
                next();
                ph.angles.push_back(realExpr("a phase"));
            }
            spec = ph;
        } else if (word == "table") {
            AlphaTable tab;
            tab.coefficients.push_back(row());
            while (peek().is(",")) {
                next();
                tab.coefficients.push_back(row());
            }
            spec = tab;
        } else {
            failAt(kind, "unknown coefficient family '" + word + "'");
        }
        expect(")");
        return spec;
    }

    struct GuardedBranches {
        std::vector<std::vector<CMatrix>> guards; // one vector for ket guards, several for subspaces
        std::vector<ProgramPtr> bodies;
        bool subspace = false;
    };

    GuardedBranches qbranches(std::size_t coinDim, std::string_view terminator) {
        GuardedBranches out;
        bool first = true;
        while (!peek().isWord(terminator)) {
            if (peek().kind == TokenKind::End) fail("expected '" + std::string(terminator) + "'");
            if (peek().is("[]")) {
                next();
            } else if (!first) {
                fail("expected '[]' or '" + std::string(terminator) + "' but found '" + describe(peek()) + "'");
            }
            const Token at = peek();
            std::vector<CMatrix> guard;
            bool isSubspace = false;
            if (peek().is("{")) {
                next();
                isSubspace = true;
                guard.push_back(ket(coinDim));
                while (peek().is(",")) {
                    next();
                    guard.push_back(ket(coinDim));
                }
                expect("}");
            } else {
                guard.push_back(ket(coinDim));
            }
            if (!first && isSubspace != out.subspace) failAt(at, "cannot mix subspace and vector guards");
            out.subspace = isSubspace;
            expect("->");
            out.guards.push_back(std::move(guard));
            out.bodies.push_back(parseProg());
            first = false;
        }
        if (out.bodies.empty()) fail("expected at least one guarded branch");
        next();
        return out;
    }

    static std::vector<CMatrix> flatGuards(const GuardedBranches& g) {
        std::vector<CMatrix> out;
        for (const auto& v : g.guards) out.push_back(v.front());
        return out;
    }

    // ---- programs ------------------------------------------------------

    ProgramPtr parseProg() {
        ProgramPtr p = parseStmt();
        while (peek().is(";") && startsStatement(peek(1))) {
            const Token at = next();
            p = Program::seq(p, parseStmt(), locOf(at));
        }
        return p;
    }

    static bool startsStatement(const Token& t) {
        if (t.is("[")) return true;
        if (t.kind != TokenKind::Ident) return false;
        static const std::set<std::string> closers{"end", "fiq"};
        return !closers.count(t.text);
    }

    ProgramPtr parseStmt() {
        const Token t = peek();
        const SourceLoc loc = locOf(t);
        if (t.isWord("abort")) {
            next();
            return Program::abort(loc);
        }
        if (t.isWord("skip")) {
            next();
            return Program::skip(loc);
        }
        if (t.isWord("measure")) return parseMeasure();
        if (t.isWord("qif")) return parseQif();
        if (t.isWord("begin")) return parseBlock();
        if (t.isWord("pchoice")) return parsePChoice();
        if (t.is("[")) return parseQChoice();
        if (t.kind == TokenKind::Ident && !reservedWords().count(t.text)) return parseGateApplication();
        fail("expected a statement but found '" + describe(t) + "'");
    }

    ProgramPtr parseGateApplication() {
        const Token at = next();
        const std::string name = at.text;
        std::vector<double> args;
        if (peek().is("(")) {
            next();
            args.push_back(realExpr("a gate argument"));
            while (peek().is(",")) {
                next();
                args.push_back(realExpr("a gate argument"));
            }
            expect(")");
        }
        expect("[");
        auto qvars = qvarList();
        expect("]");
        const std::size_t dim = dimOfList(qvars);
        GateDef gate;
        if (const GateDef* g = file_.findGate(name)) {
            if (!args.empty()) failAt(at, "gate '" + name + "' takes no arguments");
            gate = *g;
        } else if (gatelib::isBuiltinGate(name)) {
            try {
                gate = gatelib::builtin(name, dim, args);
            } catch (const Error& e) {
                failAt(at, e.what());
            }
        } else {
            failAt(at, "unknown gate '" + name + "'");
        }
        if (gate.matrix.rows() != dim) {
            failAt(at, "gate '" + name + "' has dimension " + std::to_string(gate.matrix.rows()) +
                           " but is applied to a register of dimension " + std::to_string(dim));
        }
        return Program::unitary(std::move(gate), std::move(qvars), locOf(at));
    }

    ProgramPtr parseMeasure() {
        const Token at = next();
        const Token nameTok = peek();
        const std::string name = identifier("a measurement name");
        expect("[");
        auto qvars = qvarList();
        expect(":");
        const std::string cvar = identifier("a classical variable");
        expect("]");
        const std::size_t dim = dimOfList(qvars);
        MeasDef meas;
        if (const MeasDef* m = file_.findMeasurement(name)) {
            meas = *m;
        } else if (gatelib::isBuiltinMeasurement(name)) {
            try {
                meas = gatelib::builtinMeasurement(name, dim);
            } catch (const Error& e) {
                failAt(nameTok, e.what());
            }
        } else {
            failAt(nameTok, "unknown measurement '" + name + "'");
        }
        if (meas.dim() != dim) {
            failAt(nameTok, "measurement '" + name + "' has dimension " + std::to_string(meas.dim()) +
                                " but is applied to a register of dimension " + std::to_string(dim));
        }
        std::vector<MeasureBranch> branches;
        while (peek().is("=") || peek().is("[]")) {
            next();
            const Token labelTok = peek();
            std::string outcome = resolveOutcome(meas, label(), labelTok);
            expect("->");
            branches.push_back({std::move(outcome), parseProg()});
        }
        if (branches.empty()) fail("expected '=' or '[]' to start a measurement branch");
        expectWord("end");
        return Program::measure(std::move(meas), std::move(qvars), cvar, std::move(branches), locOf(at));
    }

    // A branch label names an outcome; an integer that is not itself an
    // outcome name selects the outcome at that position.
    static std::string resolveOutcome(const MeasDef& meas, const std::string& lab, const Token& at) {
        for (const auto& o : meas.outcomes)
            if (o == lab) return o;
        if (at.kind == TokenKind::Number && at.number == std::floor(at.number) && at.number >= 0 &&
            static_cast<std::size_t>(at.number) < meas.outcomes.size()) {
            return meas.outcomes[static_cast<std::size_t>(at.number)];
        }
        failAt(at, "measurement '" + meas.name + "' has no outcome '" + lab + "'");
    }

    ProgramPtr parseQif() {
        const Token at = next();
        auto alpha = alphaSpec();
        expect("[");
        auto coins = qvarList();
        expect("]");
        auto branches = qbranches(dimOfList(coins), "fiq");
        if (branches.subspace) {
            if (alpha) failAt(at, "subspace-guarded alternation takes no coefficient family");
            return Program::subspaceQif(std::move(coins), std::move(branches.guards), std::move(branches.bodies),
                                        locOf(at));
        }
        return Program::qif(std::move(coins), flatGuards(branches), std::move(branches.bodies), std::move(alpha),
                            locOf(at));
    }

    ProgramPtr parseQChoice() {
        const Token at = next();
        ProgramPtr coin = parseProg();
        expect("]");
        expect("(+)");
        auto alpha = alphaSpec();
        std::size_t coinDim = 1;
        for (const auto& v : coin->qvars()) coinDim *= file_.registry.qvar(file_.registry.qvarIndex(v)).dim;
        auto branches = qbranches(coinDim, "end");
        if (branches.subspace) failAt(at, "quantum choice takes vector guards");
        return Program::qchoice(std::move(coin), flatGuards(branches), std::move(branches.bodies), std::move(alpha),
                                locOf(at));
    }

    ProgramPtr parseBlock() {
        const Token at = next();
        expectWord("local");
        auto locals = qvarList();
        expect(":=");
        const std::size_t dim = dimOfList(locals);
        CMatrix init;
        if (peek().is("|")) {
            init = CMatrix::projector(ket(dim));
        } else {
            const Token m = peek();
            init = matrixExpr();
            if (init.rows() != dim || init.cols() != dim) {
                failAt(m, "initial state must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
            }
        }
        expect(";");
        ProgramPtr body = parseProg();
        expectWord("end");
        return Program::block(std::move(locals), std::move(init), std::move(body), locOf(at));
    }

    ProgramPtr parsePChoice() {
        const Token at = next();
        std::vector<std::pair<ProgramPtr, double>> branches;
        while (!peek().isWord("end")) {
            if (peek().kind == TokenKind::End) fail("expected 'end'");
            if (!branches.empty() && peek().is("[]")) next();
            ProgramPtr body = parseProg();
            expect("@");
            branches.emplace_back(std::move(body), realExpr("a probability"));
        }
        if (branches.empty()) fail("pchoice needs at least one branch");
        next();
        return Program::probChoice(std::move(branches), locOf(at));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    ProgramFile file_;
};

} // namespace

ProgramFile parse(std::string_view source) { return Parser(source).parseFile(); }

ProgramFile parseFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open program file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

} // namespace qgcl
