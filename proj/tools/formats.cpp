#include "formats.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace eda::tools {

double DemoData::rate() const
{
    const auto P = times.size();
    if (P < 2 || !(duration() > 0.0)) {
        throw std::invalid_argument("demonstration: need increasing times");
    }
    return static_cast<double>(P - 1) / duration();
}

DemoData readDemoCsv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open demonstration '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,x,y", 0) != 0) {
        throw std::invalid_argument(path + ": expected header 't,x,y'");
    }
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
    int lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::istringstream ls(line);
        double tv, xv, yv;
        char c1, c2;
        if (!(ls >> tv >> c1 >> xv >> c2 >> yv) || c1 != ',' || c2 != ',') {
            throw std::invalid_argument(path + ":" + std::to_string(lineNo) + ": bad row");
        }
        if (!t.empty() && tv <= t.back()) {
            throw std::invalid_argument(path + ":" + std::to_string(lineNo) +
                                        ": times must be strictly increasing");
        }
        t.push_back(tv);
        x.push_back(xv);
        y.push_back(yv);
    }
    DemoData demo;
    const auto P = static_cast<Eigen::Index>(t.size());
    demo.times.resize(P);
    demo.positions.resize(P, 2);
    for (Eigen::Index j = 0; j < P; ++j) {
        demo.times[j] = t[j];
        demo.positions(j, 0) = x[j];
        demo.positions(j, 1) = y[j];
    }
    return demo;
}

void writeDemoCsv(const std::string& path, const DemoData& demo)
{
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open demo output '" + path + "'");
    }
    out << "t,x,y\n" << std::setprecision(17);
    for (Eigen::Index j = 0; j < demo.times.size(); ++j) {
        out << demo.times[j] << ',' << demo.positions(j, 0) << ',' << demo.positions(j, 1)
            << '\n';
    }
}

namespace {

std::vector<double> numbersAfterEquals(const std::string& line, const std::string& path,
                                       int lineNo)
{
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument(path + ":" + std::to_string(lineNo) +
                                    ": expected 'key = values'");
    }
    std::istringstream vs(line.substr(eq + 1));
    std::vector<double> out;
    double v;
    while (vs >> v) out.push_back(v);
    return out;
}

}  // namespace

DmpModelFile readModelFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open dmp model '" + path + "'");
    }
    DmpModelFile m;
    std::map<int, Eigen::VectorXd> rows;
    std::string line;
    int lineNo = 0;
    std::string section;
    while (std::getline(in, line)) {
        ++lineNo;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
        if (line.front() == '[') {
            section = line.substr(1, line.find(']') - 1);
            continue;
        }
        const auto eq = line.find('=');
        std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        const auto values = numbersAfterEquals(line, path, lineNo);

        if (section == "dmp") {
            if (values.size() < 1 && key != "x_i" && key != "x_g") {
                throw std::invalid_argument(path + ":" + std::to_string(lineNo) + ": missing value");
            }
            if (key == "dims") m.config.dims = static_cast<int>(values.at(0));
            else if (key == "basis") m.config.nBasis = static_cast<int>(values.at(0));
            else if (key == "alpha_s") m.config.alphaS = values.at(0);
            else if (key == "alpha_z") m.config.alphaZ = values.at(0);
            else if (key == "beta_z") m.config.betaZ = values.at(0);
            else if (key == "tau") m.config.tau = values.at(0);
            else if (key == "duration") m.duration = values.at(0);
            else if (key == "x_i") m.xi = Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
            else if (key == "x_g") m.xg = Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
            else throw std::invalid_argument(path + ":" + std::to_string(lineNo) + ": unknown key '" + key + "'");
        } else if (section == "weights") {
            if (key.size() < 2 || key[0] != 'w') {
                throw std::invalid_argument(path + ":" + std::to_string(lineNo) + ": expected w<dim> rows");
            }
            const int d = std::stoi(key.substr(1));
            rows[d] = Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
        } else {
            throw std::invalid_argument(path + ":" + std::to_string(lineNo) + ": key outside [dmp]/[weights]");
        }
    }
    m.weights.resize(m.config.dims, m.config.nBasis);
    for (int d = 1; d <= m.config.dims; ++d) {
        if (!rows.count(d) || rows[d].size() != m.config.nBasis) {
            throw std::invalid_argument(path + ": missing or malformed weight row w" + std::to_string(d));
        }
        m.weights.row(d - 1) = rows[d].transpose();
    }
    if (m.xi.size() != m.config.dims || m.xg.size() != m.config.dims) {
        throw std::invalid_argument(path + ": x_i/x_g dimension mismatch");
    }
    return m;
}

void writeModelFile(const std::string& path, const DmpModelFile& m)
{
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open model output '" + path + "'");
    }
    out << std::setprecision(17);
    out << "[dmp]\n";
    out << "dims = " << m.config.dims << "\n";
    out << "basis = " << m.config.nBasis << "\n";
    out << "alpha_s = " << m.config.alphaS << "\n";
    out << "alpha_z = " << m.config.alphaZ << "\n";
    out << "beta_z = " << m.config.betaZ << "\n";
    out << "tau = " << m.config.tau << "\n";
    out << "duration = " << m.duration << "\n";
    out << "x_i =";
    for (Eigen::Index d = 0; d < m.xi.size(); ++d) out << ' ' << m.xi[d];
    out << "\nx_g =";
    for (Eigen::Index d = 0; d < m.xg.size(); ++d) out << ' ' << m.xg[d];
    out << "\n\n[weights]\n";
    for (int d = 0; d < m.config.dims; ++d) {
        out << 'w' << d + 1 << " =";
        for (int i = 0; i < m.config.nBasis; ++i) out << ' ' << m.weights(d, i);
        out << '\n';
    }
}

void writeRolloutCsv(const std::string& path, const DmpRollout& rollout)
{
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open rollout output '" + path + "'");
    }
    const auto n = rollout.x.cols();
    out << "t";
    for (Eigen::Index d = 1; d <= n; ++d) out << ",x" << d;
    for (Eigen::Index d = 1; d <= n; ++d) out << ",xd" << d;
    out << '\n' << std::setprecision(17);
    for (Eigen::Index j = 0; j < rollout.x.rows(); ++j) {
        out << static_cast<double>(j) * rollout.dt;
        for (Eigen::Index d = 0; d < n; ++d) out << ',' << rollout.x(j, d);
        for (Eigen::Index d = 0; d < n; ++d) out << ',' << rollout.xd(j, d);
        out << '\n';
    }
}

}  // namespace eda::tools
