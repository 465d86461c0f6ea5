#include "eda/robotmodel.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace eda {

namespace {

// World-frame quantities of the chain at configuration q.
struct ChainFrames {
    std::vector<Vec3> jointAxis;    // rotated joint axes
    std::vector<Vec3> jointPoint;   // points on the joint axes
    std::vector<Mat3> linkR;        // orientation of link i (after joint i)
    std::vector<Vec3> linkP;        // translation of link i's home frame
    Pose flange;
    Pose tip;
};

ChainFrames computeChain(const RobotDescription& m, const VectorXd& q)
{
    const int n = m.dof();
    if (q.size() != n) {
        throw std::invalid_argument("kinematics: expected " + std::to_string(n) +
                                    " joint values, got " + std::to_string(q.size()));
    }
    ChainFrames f;
    f.jointAxis.resize(n);
    f.jointPoint.resize(n);
    f.linkR.resize(n);
    f.linkP.resize(n);

    Mat3 R = Mat3::Identity();
    Vec3 p = Vec3::Zero();
    for (int i = 0; i < n; ++i) {
        f.jointAxis[i] = R * m.joints[i].axis;
        f.jointPoint[i] = R * m.joints[i].origin + p;

        // Rotation about the joint axis through its origin, in home coordinates.
        const Mat3 Ri = so3Exp(m.joints[i].axis * q[i]);
        const Vec3 pi = m.joints[i].origin - Ri * m.joints[i].origin;
        p = R * pi + p;
        R = R * Ri;

        f.linkR[i] = R;
        f.linkP[i] = p;
    }
    f.flange.R = R * m.eeRotation;
    f.flange.p = R * m.eeOrigin + p;
    f.tip.R = f.flange.R;
    f.tip.p = f.flange.p + f.flange.R * m.toolOffset;
    return f;
}

}  // namespace

Pose forwardKinematics(const RobotDescription& model, const VectorXd& q)
{
    return computeChain(model, q).tip;
}

void jacobians(const RobotDescription& model, const VectorXd& q,
               Eigen::Matrix3Xd& Jp, Eigen::Matrix3Xd& Jr)
{
    const ChainFrames f = computeChain(model, q);
    const int n = model.dof();
    Jp.resize(3, n);
    Jr.resize(3, n);
    for (int i = 0; i < n; ++i) {
        Jr.col(i) = f.jointAxis[i];
        Jp.col(i) = f.jointAxis[i].cross(f.tip.p - f.jointPoint[i]);
    }
}

MatrixXd massMatrix(const RobotDescription& model, const VectorXd& q)
{
    const ChainFrames f = computeChain(model, q);
    const int n = model.dof();
    MatrixXd M = MatrixXd::Zero(n, n);

    Eigen::Matrix3Xd Jp(3, n), Jr(3, n);
    for (int i = 0; i < n; ++i) {
        const Link& link = model.links[i];
        const Vec3 com = f.linkR[i] * link.com + f.linkP[i];
        Jp.setZero();
        Jr.setZero();
        for (int j = 0; j <= i; ++j) {
            Jr.col(j) = f.jointAxis[j];
            Jp.col(j) = f.jointAxis[j].cross(com - f.jointPoint[j]);
        }
        const Mat3 Iw = f.linkR[i] * link.inertia * f.linkR[i].transpose();
        M.noalias() += link.mass * Jp.transpose() * Jp;
        M.noalias() += Jr.transpose() * Iw * Jr;
    }
    return M;
}

VectorXd biasForces(const RobotDescription& model, const VectorXd& q,
                    const VectorXd& qd)
{
    const int n = model.dof();
    if (q.size() != n || qd.size() != n) {
        throw std::invalid_argument("biasForces: joint vector dimension mismatch");
    }
    const double h = 1e-6;
    std::vector<MatrixXd> dM(n);
    VectorXd qp = q;
    for (int k = 0; k < n; ++k) {
        qp[k] = q[k] + h;
        const MatrixXd Mp = massMatrix(model, qp);
        qp[k] = q[k] - h;
        const MatrixXd Mm = massMatrix(model, qp);
        qp[k] = q[k];
        dM[k] = (Mp - Mm) / (2.0 * h);
    }

    // (C qd)_i = sum_k (dM/dq_k qd)_i qd_k - 1/2 qd' dM/dq_i qd
    VectorXd c = VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) {
        c.noalias() += (dM[k] * qd) * qd[k];
    }
    for (int i = 0; i < n; ++i) {
        c[i] -= 0.5 * qd.dot(dM[i] * qd);
    }
    return c;
}

void RobotDescription::validate() const
{
    if (joints.empty()) {
        throw std::invalid_argument("robot description: no joints (n = 0)");
    }
    if (links.size() != joints.size()) {
        throw std::invalid_argument("robot description: " + std::to_string(joints.size()) +
                                    " joints but " + std::to_string(links.size()) + " links");
    }
    for (size_t i = 0; i < joints.size(); ++i) {
        if (std::abs(joints[i].axis.norm() - 1.0) > 1e-9) {
            throw std::invalid_argument("joint " + std::to_string(i + 1) + ": non-unit axis");
        }
        if (!joints[i].axis.allFinite() || !joints[i].origin.allFinite()) {
            throw std::invalid_argument("joint " + std::to_string(i + 1) + ": non-finite value");
        }
    }
    for (size_t i = 0; i < links.size(); ++i) {
        const Link& link = links[i];
        if (!(link.mass > 0.0)) {
            throw std::invalid_argument("link " + std::to_string(i + 1) + ": mass must be > 0");
        }
        if ((link.inertia - link.inertia.transpose()).norm() > 1e-12) {
            throw std::invalid_argument("link " + std::to_string(i + 1) + ": inertia not symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Mat3> es(link.inertia);
        if (es.eigenvalues().minCoeff() < -1e-12) {
            throw std::invalid_argument("link " + std::to_string(i + 1) + ": inertia not PSD");
        }
    }
    if (!isRotation(eeRotation)) {
        throw std::invalid_argument("ee rotation is not orthonormal");
    }
}

namespace {

struct ParseState {
    std::string section;     // "joint", "link", "ee", "tool"
    int index = 0;           // 1-based for joint/link
    std::map<int, Joint> joints;
    std::map<int, Link> links;
    std::map<int, int> jointLine;  // for diagnostics after parsing
    RobotDescription desc;
    bool sawEe = false;
};

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg)
{
    throw std::invalid_argument(name + ":" + std::to_string(line) + ": " + msg);
}

std::vector<double> parseNumbers(const std::string& s, const std::string& name, int line)
{
    std::istringstream iss(s);
    std::vector<double> out;
    double v;
    while (iss >> v) {
        out.push_back(v);
    }
    std::string rest;
    if (iss.fail() && !iss.eof() && (iss.clear(), iss >> rest)) {
        fail(name, line, "invalid number '" + rest + "'");
    }
    return out;
}

Vec3 expect3(const std::vector<double>& v, const std::string& name, int line,
             const std::string& key)
{
    if (v.size() != 3) fail(name, line, key + " expects 3 numbers, got " + std::to_string(v.size()));
    return Vec3(v[0], v[1], v[2]);
}

}  // namespace

RobotDescription RobotDescription::fromString(const std::string& text, const std::string& name)
{
    ParseState st;
    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;

    while (std::getline(in, raw)) {
        ++lineNo;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        if (line.front() == '[') {
            if (line.back() != ']') fail(name, lineNo, "unterminated section header");
            std::istringstream hs(line.substr(1, line.size() - 2));
            std::string kind;
            hs >> kind;
            int idx = 0;
            if (kind == "joint" || kind == "link") {
                if (!(hs >> idx) || idx < 1) fail(name, lineNo, "section [" + kind + " i] needs an index >= 1");
            } else if (kind != "ee" && kind != "tool") {
                fail(name, lineNo, "unknown section [" + kind + "]");
            }
            st.section = kind;
            st.index = idx;
            if (kind == "ee") st.sawEe = true;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(name, lineNo, "expected 'key = values'");
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        const auto values = parseNumbers(line.substr(eq + 1), name, lineNo);

        if (st.section == "joint") {
            Joint& j = st.joints[st.index];
            st.jointLine[st.index] = lineNo;
            if (key == "axis") {
                j.axis = expect3(values, name, lineNo, key);
                if (std::abs(j.axis.norm() - 1.0) > 1e-9) fail(name, lineNo, "non-unit axis");
            } else if (key == "origin") {
                j.origin = expect3(values, name, lineNo, key);
            } else {
                fail(name, lineNo, "unknown joint key '" + key + "'");
            }
        } else if (st.section == "link") {
            Link& l = st.links[st.index];
            if (key == "mass") {
                if (values.size() != 1) fail(name, lineNo, "mass expects 1 number");
                l.mass = values[0];
                if (!(l.mass > 0.0)) fail(name, lineNo, "mass must be > 0");
            } else if (key == "com") {
                l.com = expect3(values, name, lineNo, key);
            } else if (key == "inertia") {
                if (values.size() != 6) fail(name, lineNo, "inertia expects ixx iyy izz ixy ixz iyz");
                Mat3& I = l.inertia;
                I(0, 0) = values[0];
                I(1, 1) = values[1];
                I(2, 2) = values[2];
                I(0, 1) = I(1, 0) = values[3];
                I(0, 2) = I(2, 0) = values[4];
                I(1, 2) = I(2, 1) = values[5];
                Eigen::SelfAdjointEigenSolver<Mat3> es(I);
                if (es.eigenvalues().minCoeff() < -1e-12) fail(name, lineNo, "inertia not PSD");
            } else {
                fail(name, lineNo, "unknown link key '" + key + "'");
            }
        } else if (st.section == "ee") {
            if (key == "origin") {
                st.desc.eeOrigin = expect3(values, name, lineNo, key);
            } else if (key == "rotation") {
                if (values.size() != 9) fail(name, lineNo, "rotation expects 9 row-major numbers");
                Mat3 R;
                R << values[0], values[1], values[2],
                     values[3], values[4], values[5],
                     values[6], values[7], values[8];
                if (!isRotation(R)) fail(name, lineNo, "rotation is not orthonormal");
                st.desc.eeRotation = R;
            } else {
                fail(name, lineNo, "unknown ee key '" + key + "'");
            }
        } else if (st.section == "tool") {
            if (key == "offset") {
                st.desc.toolOffset = expect3(values, name, lineNo, key);
            } else {
                fail(name, lineNo, "unknown tool key '" + key + "'");
            }
        } else {
            fail(name, lineNo, "key outside any section");
        }
    }

    if (st.joints.empty()) {
        throw std::invalid_argument(name + ": no joints (n = 0)");
    }
    const int n = static_cast<int>(st.joints.size());
    for (int i = 1; i <= n; ++i) {
        if (!st.joints.count(i)) {
            throw std::invalid_argument(name + ": missing [joint " + std::to_string(i) + "]");
        }
        if (!st.links.count(i)) {
            throw std::invalid_argument(name + ": missing [link " + std::to_string(i) + "]");
        }
        st.desc.joints.push_back(st.joints[i]);
        st.desc.links.push_back(st.links[i]);
    }
    if (!st.sawEe) {
        throw std::invalid_argument(name + ": missing [ee] section");
    }
    st.desc.validate();
    return st.desc;
}

RobotDescription RobotDescription::fromFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open robot description '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const auto slash = path.find_last_of('/');
    const std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    return fromString(buf.str(), base);
}

}  // namespace eda
