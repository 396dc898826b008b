#include "impact/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace impact {

namespace {

const char* b01(bool v) { return v ? "1" : "0"; }
const char* jbool(bool v) { return v ? "true" : "false"; }

std::string jcomplex(const std::complex<Real>& z) {
    return "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]";
}

std::string jmatrix(const Eigen::Matrix3d& m) {
    std::string out = "[";
    for (int i = 0; i < 3; ++i) {
        out += i ? ", [" : "[";
        for (int j = 0; j < 3; ++j) {
            if (j) out += ", ";
            out += format_real(m(i, j));
        }
        out += "]";
    }
    return out + "]";
}

std::string jvector(const Eigen::Vector3d& v) {
    return "[" + format_real(v[0]) + ", " + format_real(v[1]) + ", " + format_real(v[2]) + "]";
}

}  // namespace

std::string format_real(Real v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "n,quote,y,xi,u,q,p\n";
    for (const PeriodRecord& rec : traj.records) {
        out += std::to_string(rec.n);
        for (Real v : {rec.quote, rec.y, rec.xi, rec.u, rec.q, rec.p}) {
            out += ',';
            out += format_real(v);
        }
        out += '\n';
    }
    return out;
}

std::string region_csv(const RegionGrid& grid) {
    std::string out = "lambda,mu,R,D,L,in_M,in_M1,in_M2,in_M3,on_kyle\n";
    for (const RegionCell& cell : grid.cells) {
        out += format_real(cell.lambda);
        out += ',';
        out += format_real(cell.mu);
        for (Real v : {cell.values.r, cell.values.d, cell.values.l}) {
            out += ',';
            out += format_real(v);
        }
        for (bool b : {cell.label.in_m, cell.label.in_m1, cell.label.in_m2, cell.label.in_m3,
                       cell.label.on_kyle_line}) {
            out += ',';
            out += b01(b);
        }
        out += '\n';
    }
    return out;
}

std::string control_report_json(const SystemMatrices& m, const FeedbackGain& gain) {
    const Eigen::Matrix3d w = controllability_matrix(m);
    const Eigen::Vector3d coeffs = char_poly_coeffs(m, gain);
    const Eigen::Matrix3d closed = m.A - m.B * gain.sigma;
    const Eigen::EigenSolver<Eigen::Matrix3d> solver(closed);

    std::ostringstream os;
    os << "{\n";
    os << "  \"lambda\": " << format_real(m.lambda) << ",\n";
    os << "  \"mu\": " << format_real(m.mu) << ",\n";
    os << "  \"beta\": " << format_real(m.beta) << ",\n";
    os << "  \"A\": " << jmatrix(m.A) << ",\n";
    os << "  \"B\": " << jvector(m.B) << ",\n";
    os << "  \"W\": " << jmatrix(w) << ",\n";
    os << "  \"detW\": " << format_real(w.determinant()) << ",\n";
    os << "  \"sigma\": " << jvector(gain.sigma.transpose()) << ",\n";
    os << "  \"phi\": [" << jcomplex(gain.phi[0]) << ", " << jcomplex(gain.phi[1]) << ", "
       << jcomplex(gain.phi[2]) << "],\n";
    os << "  \"delta\": " << jvector(gain.delta) << ",\n";
    os << "  \"char_poly_residual\": " << jvector((coeffs - gain.delta).cwiseAbs()) << ",\n";
    os << "  \"max_abs_phi\": " << format_real(gain.max_abs_phi) << ",\n";
    os << "  \"stable\": " << jbool(gain.stable) << ",\n";
    os << "  \"closed_loop_eigenvalues\": [";
    for (int i = 0; i < 3; ++i) {
        if (i) os << ", ";
        os << jcomplex(solver.eigenvalues()[i]);
    }
    os << "]\n}\n";
    return os.str();
}

std::string game_report_json(const GameReportInputs& in) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"lambda\": " << format_real(in.rule.lambda) << ",\n";
    os << "  \"mu\": " << format_real(in.rule.mu) << ",\n";
    os << "  \"beta\": " << format_real(in.beta) << ",\n";

    os << "  \"subgame_payoffs\": {\n    \"x1\": 1,\n    \"cells\": [\n";
    for (int x2 = -1, first = 1; x2 <= 1; ++x2) {
        for (int x3 = -1; x3 <= 1; ++x3, first = 0) {
            const SubgamePayoffs pay = subgame_payoffs_no_control(in.rule, in.beta, 1, x2, x3);
            if (!first) os << ",\n";
            os << "      {\"x2\": " << x2 << ", \"x3\": " << x3
               << ", \"pi1\": " << format_real(pay.pi1) << ", \"pi2\": " << format_real(pay.pi2)
               << ", \"source\": \"closed_form\"}";
        }
    }
    os << "\n    ]\n  }";

    if (in.certificate) {
        const SpeCertificate& c = *in.certificate;
        os << ",\n  \"spe_certificate\": {\n";
        os << "    \"L\": " << format_real(c.l) << ",\n";
        os << "    \"R\": " << format_real(c.r) << ",\n";
        os << "    \"certified\": " << jbool(c.certified) << ",\n";
        os << "    \"rejoin_penalty\": [" << format_real(c.rejoin_penalty[0]) << ", "
           << format_real(c.rejoin_penalty[1]) << ", " << format_real(c.rejoin_penalty[2])
           << "],\n";
        os << "    \"strict\": [" << jbool(c.strict[0]) << ", " << jbool(c.strict[1]) << ", "
           << jbool(c.strict[2]) << "],\n";
        os << "    \"max_pi1\": " << format_real(c.max_pi1) << "\n  }";
    }

    if (in.theorem1) {
        const Theorem1Cases& t = *in.theorem1;
        os << ",\n  \"theorem1\": {\n    \"sigma\": [" << format_real(t.gain.sigma[0]) << ", "
           << format_real(t.gain.sigma[1]) << ", " << format_real(t.gain.sigma[2])
           << "],\n    \"cells\": [\n";
        for (size_t i = 0; i < t.cells.size(); ++i) {
            const Theorem1Cell& cell = t.cells[i];
            if (i) os << ",\n";
            os << "      {\"x2\": " << cell.x2 << ", \"x3\": " << cell.x3
               << ", \"pi1\": " << format_real(cell.pi1) << ", \"pi2\": " << format_real(cell.pi2)
               << ", \"u2\": " << format_real(cell.u2) << ", \"p2\": " << format_real(cell.p2)
               << ", \"xi3\": " << format_real(cell.xi3) << ", \"u3\": " << format_real(cell.u3)
               << ", \"source\": \"simulation\"}";
        }
        os << "\n    ],\n";
        os << "    \"max_admissible_pi1\": " << format_real(t.max_admissible_pi1) << ",\n";
        os << "    \"no_trade_path_flat\": " << jbool(t.no_trade_path_flat) << "\n  }";
    }

    if (in.witness) {
        os << ",\n  \"impossibility_witness\": {\"band_lo\": " << format_real(in.witness->band_lo)
           << ", \"band_hi\": " << format_real(in.witness->band_hi)
           << ", \"empty\": " << jbool(in.witness->empty) << "}";
    }

    if (in.ne_report) {
        const PayoffReport& r = *in.ne_report;
        os << ",\n  \"ne_report\": {\n    \"horizon\": " << r.horizon
           << ",\n    \"any_profitable_deviation\": " << jbool(r.any_profitable_deviation)
           << ",\n    \"speculators\": [\n";
        for (size_t i = 0; i < r.speculators.size(); ++i) {
            const SpeculatorReport& sr = r.speculators[i];
            if (i) os << ",\n";
            os << "      {\"n\": " << sr.n << ", \"x1\": " << sr.x1
               << ", \"payoff\": " << format_real(sr.payoff)
               << ", \"truncation_affected\": " << jbool(sr.truncation_affected)
               << ", \"deviations\": [";
            for (size_t j = 0; j < sr.deviations.size(); ++j) {
                const DeviationEntry& d = sr.deviations[j];
                if (j) os << ", ";
                os << "{\"x1\": " << d.x1 << ", \"payoff\": " << format_real(d.payoff)
                   << ", \"profitable\": " << jbool(d.profitable) << "}";
            }
            os << "]}";
        }
        os << "\n    ]\n  }";
    }

    os << "\n}\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace impact
