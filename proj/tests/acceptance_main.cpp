#include <iostream>
#include <string>
#include <vector>

#include "qf/acceptance.hpp"

int main(int argc, char** argv) {
  qf::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "missing value for " << arg << "\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--groups-dir")
      opts.groups_dir = next();
    else if (arg == "--groups")
      opts.group_files.push_back(next());
    else if (arg == "--jobs")
      opts.jobs = std::stoi(next());
    else {
      std::cerr << "usage: qf_acceptance [--groups-dir DIR] [--groups FILE]... [--jobs N]\n";
      return 2;
    }
  }
  return qf::run_acceptance(opts, std::cout);
}
