#include "ssc/cli.hpp"

int main(int argc, char** argv) { return ssc::cli::run(argc, argv); }
