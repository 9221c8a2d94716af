#include "qre/cli.hpp"

int main(int argc, char** argv) { return qre::cli::run(argc, argv); }
