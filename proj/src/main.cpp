#include "planetree/report.hpp"

int main(int argc, char** argv) { return planetree::run(argc, argv); }
