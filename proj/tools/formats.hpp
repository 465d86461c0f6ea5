#ifndef EDA_TOOLS_FORMATS_HPP
#define EDA_TOOLS_FORMATS_HPP

#include <string>

#include "eda/dmp.hpp"

namespace eda::tools {

// Demonstration CSV with header "t,x,y": one time column plus the 2-D
// drawing-task coordinates, SI units.
struct DemoData {
    Eigen::VectorXd times;
    Eigen::MatrixXd positions;  // P x 2

    double rate() const;
    double duration() const { return times[times.size() - 1] - times[0]; }
};

DemoData readDemoCsv(const std::string& path);
void writeDemoCsv(const std::string& path, const DemoData& demo);

// Learned DMP stored as key=value sections, one weight row per dimension.
// Endpoints and duration of the training demonstration ride along so a
// rollout can be reproduced without the demo file.
struct DmpModelFile {
    DmpConfig config;
    Eigen::MatrixXd weights;
    Eigen::VectorXd xi;
    Eigen::VectorXd xg;
    double duration = 0.0;
};

DmpModelFile readModelFile(const std::string& path);
void writeModelFile(const std::string& path, const DmpModelFile& model);

// Rollout CSV with header "t,x1..xn,xd1..xdn".
void writeRolloutCsv(const std::string& path, const DmpRollout& rollout);

}  // namespace eda::tools

#endif
