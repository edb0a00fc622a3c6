#include "opsym/spec_file.hpp"

#include <fstream>
#include <sstream>

#include "opsym/errors.hpp"

namespace opsym {

namespace {

[[noreturn]] void fail(int line, const std::string& message) {
    throw InputError("operator spec, line " + std::to_string(line) + ": " + message);
}

}  // namespace

SymbolOperator parse_operator_spec(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_version = false;
    std::string name;
    int n = -1, k = -1, dimV = -1, dimE = -1;
    std::map<Multiindex, RationalMatrix> coeffs;

    auto need_header = [&](int line_no_local) {
        if (n < 0 || k < 0 || dimV < 0 || dimE < 0)
            fail(line_no_local, "coeff before the n/k/dimV/dimE header is complete");
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;  // blank
        if (key[0] == '#') continue;
        if (!have_version && key != "format_version")
            fail(line_no, "file must start with 'format_version'");
        if (key == "format_version") {
            int v = 0;
            if (!(ls >> v)) fail(line_no, "format_version needs an integer");
            if (v != 1) fail(line_no, "unsupported format_version " + std::to_string(v));
            have_version = true;
        } else if (key == "name") {
            if (!(ls >> name)) fail(line_no, "name needs a token");
        } else if (key == "n" || key == "k" || key == "dimV" || key == "dimE") {
            int v = 0;
            if (!(ls >> v) || v < 1) fail(line_no, key + " needs a positive integer");
            (key == "n" ? n : key == "k" ? k : key == "dimV" ? dimV : dimE) = v;
        } else if (key == "coeff") {
            need_header(line_no);
            std::string alpha_text, value_text;
            int row = -1, col = -1;
            if (!(ls >> alpha_text >> row >> col >> value_text))
                fail(line_no, "coeff needs: <multiindex> <row> <col> <rational>");
            Multiindex alpha;
            try {
                alpha = Multiindex::parse(alpha_text, n);
            } catch (const InputError& err) {
                fail(line_no, err.what());
            }
            if (alpha.order() != k)
                fail(line_no, "multiindex (" + alpha_text + ") has order " +
                                  std::to_string(alpha.order()) + ", expected k = " +
                                  std::to_string(k));
            if (row < 0 || row >= dimE) fail(line_no, "row out of range [0, dimE)");
            if (col < 0 || col >= dimV) fail(line_no, "col out of range [0, dimV)");
            Rational value;
            try {
                value = parse_rational(value_text);
            } catch (const InputError& err) {
                fail(line_no, err.what());
            }
            auto it = coeffs.emplace(alpha, RationalMatrix::Zero(dimE, dimV)).first;
            if (it->second(row, col) != 0)
                fail(line_no, "duplicate coefficient for (" + alpha_text + ", " +
                                  std::to_string(row) + ", " + std::to_string(col) + ")");
            it->second(row, col) = value;
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
        std::string trailing;
        if (ls >> trailing) fail(line_no, "trailing tokens after '" + key + "' entry");
    }
    if (!have_version) throw InputError("operator spec: empty file");
    if (name.empty()) throw InputError("operator spec: missing name");
    if (n < 0 || k < 0 || dimV < 0 || dimE < 0)
        throw InputError("operator spec: incomplete header (need n, k, dimV, dimE)");
    try {
        return SymbolOperator(name, n, k, dimV, dimE, std::move(coeffs));
    } catch (const InputError& err) {
        throw InputError(std::string("operator spec: ") + err.what());
    }
}

SymbolOperator load_operator_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open operator spec '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_operator_spec(buffer.str());
}

std::string serialize_operator_spec(const SymbolOperator& op) {
    std::ostringstream os;
    os << "format_version 1\n";
    os << "name " << op.name() << "\n";
    os << "n " << op.n() << "\n";
    os << "k " << op.k() << "\n";
    os << "dimV " << op.dimV() << "\n";
    os << "dimE " << op.dimE() << "\n";
    for (const auto& [alpha, mat] : op.coeffs())
        for (int r = 0; r < op.dimE(); ++r)
            for (int c = 0; c < op.dimV(); ++c)
                if (mat(r, c) != 0)
                    os << "coeff " << alpha.to_string() << " " << r << " " << c << " "
                       << format_rational(mat(r, c)) << "\n";
    return os.str();
}

}  // namespace opsym
